#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kfl/error.hpp"
#include "kfl/formula.hpp"
#include "kfl/kripke.hpp"
#include "kfl/semantics.hpp"

namespace kfl::detail {

// A formula flattened into postfix instructions over node sets. Named
// leaves listed in `slots` read their value from the slot vector; other
// atoms are constants taken from a valuation.
class SetProgram {
 public:
  enum class Op : std::uint8_t { Const, Slot, And, Or, Impl };
  struct Instr {
    Op op;
    std::uint32_t a;
    std::uint32_t b;
    NodeSet value;
  };

  SetProgram(const Formula& f, std::span<const std::string> slots, const Valuation* valuation) {
    compile(f, slots, valuation);
  }

  NodeSet run(const Frame& frame, std::span<const NodeSet> slot_values,
              std::vector<NodeSet>& regs) const {
    regs.resize(code_.size());
    for (std::size_t i = 0; i < code_.size(); ++i) {
      const Instr& in = code_[i];
      switch (in.op) {
        case Op::Const: regs[i] = in.value; break;
        case Op::Slot: regs[i] = slot_values[in.a]; break;
        case Op::And: regs[i] = regs[in.a] & regs[in.b]; break;
        case Op::Or: regs[i] = regs[in.a] | regs[in.b]; break;
        case Op::Impl: regs[i] = arrow(frame, regs[in.a], regs[in.b]); break;
      }
    }
    return regs.back();
  }

 private:
  std::uint32_t compile(const Formula& f, std::span<const std::string> slots,
                        const Valuation* valuation) {
    Instr in{Op::Const, 0, 0, {}};
    switch (f.kind()) {
      case FormulaKind::Bot:
        break;
      case FormulaKind::Atom:
      case FormulaKind::Meta: {
        auto it = std::find(slots.begin(), slots.end(), f.name());
        if (it != slots.end()) {
          in.op = Op::Slot;
          in.a = static_cast<std::uint32_t>(it - slots.begin());
        } else if (f.kind() == FormulaKind::Meta) {
          throw Error("unbound metavariable " + f.name());
        } else if (valuation) {
          if (auto v = valuation->find(f.name()); v != valuation->end()) in.value = v->second;
        }
        break;
      }
      default: {
        in.a = compile(f.left(), slots, valuation);
        in.b = compile(f.right(), slots, valuation);
        in.op = f.kind() == FormulaKind::And  ? Op::And
                : f.kind() == FormulaKind::Or ? Op::Or
                                              : Op::Impl;
      }
    }
    code_.push_back(in);
    return static_cast<std::uint32_t>(code_.size() - 1);
  }

  std::vector<Instr> code_;
};

// A scheme's premises and conclusion compiled against a common slot list.
class CompiledScheme {
 public:
  CompiledScheme(const Scheme& s, std::span<const std::string> slots, const Valuation* valuation)
      : conclusion_(s.conclusion(), slots, valuation) {
    for (const auto& p : s.premises()) premises_.emplace_back(p, slots, valuation);
  }

  // Nodes where every premise holds and the conclusion does not.
  NodeSet failures(const Frame& frame, std::span<const NodeSet> slot_values,
                   std::vector<NodeSet>& regs) const {
    NodeSet ok = frame.nodes();
    for (const auto& p : premises_) {
      ok &= p.run(frame, slot_values, regs);
      if (ok.empty()) return ok;
    }
    return ok - conclusion_.run(frame, slot_values, regs);
  }

 private:
  std::vector<SetProgram> premises_;
  SetProgram conclusion_;
};

// Odometer over slot values drawn from `choices`, first slot most
// significant. `visit` returns true to stop early.
template <typename Visit>
bool for_each_assignment(std::size_t slot_count, std::span<const NodeSet> choices, Visit visit) {
  std::vector<std::size_t> idx(slot_count, 0);
  std::vector<NodeSet> values(slot_count, choices.empty() ? NodeSet{} : choices[0]);
  if (slot_count > 0 && choices.empty()) return false;
  while (true) {
    if (visit(std::span<const NodeSet>(values))) return true;
    std::size_t i = slot_count;
    while (i > 0) {
      --i;
      if (++idx[i] < choices.size()) {
        values[i] = choices[idx[i]];
        break;
      }
      idx[i] = 0;
      values[i] = choices[0];
      if (i == 0) return false;
    }
    if (slot_count == 0) return false;
  }
}

}  // namespace kfl::detail
