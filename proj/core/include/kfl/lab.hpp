#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kfl/kripke.hpp"
#include "kfl/semantics.hpp"

namespace kfl {

/// All 2^(n²) labeled frames on n nodes, in increasing Frame::code order.
class FrameEnumeration {
 public:
  /// Refuses n > 4 unless `allow_large` (and n > 5 always).
  explicit FrameEnumeration(std::size_t n, bool allow_large = false);

  class iterator {
   public:
    using value_type = Frame;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(std::size_t n, std::uint64_t code) : n_(n), code_(code) {}
    Frame operator*() const { return Frame::from_code(n_, code_); }
    iterator& operator++() { ++code_; return *this; }
    iterator operator++(int) { auto t = *this; ++code_; return t; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.code_ == b.code_; }

   private:
    std::size_t n_ = 1;
    std::uint64_t code_ = 0;
  };

  iterator begin() const { return {n_, 0}; }
  iterator end() const { return {n_, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  std::size_t n_;
  std::uint64_t count_;
};

FrameEnumeration enumerate_frames(std::size_t n, bool allow_large = false);

enum class SweepMode { Exhaustive, Sampled };

struct SweepConfig {
  std::size_t max_nodes = 3;
  /// Valuation alphabet for model-level sweeps: p, q, r, ...
  std::size_t atoms = 3;
  SweepMode mode = SweepMode::Exhaustive;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  /// Lifts the exhaustive guard of max_nodes <= 4 and atoms <= 3.
  bool allow_large = false;
  /// Worker threads; 0 picks the hardware concurrency. Reports do not
  /// depend on this value.
  unsigned threads = 0;
  std::size_t mismatch_cap = 16;
};

/// Throws BudgetError or kfl::Error for configurations the sweeps refuse.
void validate(const SweepConfig& cfg);

enum class TheoremId {
  Mp,
  A1,
  A4,
  A5a,
  A5b,
  A6,
  LemmaTrans,
  PropPersist,
  PropTrivial,
  CorBl,
};

std::span<const TheoremId> all_theorems();
std::string_view to_string(TheoremId id);
/// Throws UnknownNameError listing valid ids.
TheoremId theorem_from_string(std::string_view name);
/// Whether the sweep ranges over valuations as well as frames.
bool is_model_level(TheoremId id);
/// Implications count only condition-without-conclusion as a mismatch;
/// biconditionals count both directions.
bool is_biconditional(TheoremId id);

struct Mismatch {
  Model model;
  bool condition;
  bool valid;
  std::string detail;
};

struct VerificationReport {
  TheoremId theorem;
  SweepConfig config;
  /// Index i counts frames (models) on i+1 nodes.
  std::vector<std::uint64_t> frames_by_size;
  std::vector<std::uint64_t> models_by_size;
  std::uint64_t instances = 0;
  std::uint64_t skipped = 0;
  std::uint64_t condition_true = 0;
  std::uint64_t axiom_valid = 0;
  /// Condition holds but the scheme (or conclusion) fails.
  std::uint64_t forward_exceptions = 0;
  /// Scheme holds but the condition fails; biconditionals only.
  std::uint64_t converse_exceptions = 0;
  /// Finer counts for theorems whose statement mixes frame and model
  /// level; see to_text for the meaning of each key.
  std::map<std::string, std::uint64_t> breakdown;
  std::vector<Mismatch> mismatches;
  double elapsed_ms = 0;

  std::uint64_t frames() const;
  std::uint64_t models() const;
  std::uint64_t mismatch_count() const { return forward_exceptions + converse_exceptions; }
  bool passed() const { return mismatch_count() == 0; }
};

VerificationReport verify_theorem(TheoremId id, const SweepConfig& cfg);
VerificationReport verify_theorem(std::string_view id, const SweepConfig& cfg);

/// Schema: theorem, config, counts, breakdown, mismatches[], elapsed_ms.
nlohmann::ordered_json to_json(const VerificationReport& r, bool include_timing = true);
std::string to_text(const VerificationReport& r);

/// Atom names used by model-level sweeps: p, q, r, s, ...
std::vector<std::string> sweep_atoms(std::size_t count);

}  // namespace kfl
