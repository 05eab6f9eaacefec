#include "kfl/lab.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

#include "kfl/axioms.hpp"
#include "kfl/error.hpp"
#include "kfl/model_json.hpp"

namespace kfl {

namespace {

constexpr std::array kTheorems = {
    std::pair{TheoremId::Mp, std::string_view("thm-mp")},
    std::pair{TheoremId::A1, std::string_view("thm-a1")},
    std::pair{TheoremId::A4, std::string_view("thm-a4")},
    std::pair{TheoremId::A5a, std::string_view("thm-a5a")},
    std::pair{TheoremId::A5b, std::string_view("thm-a5b")},
    std::pair{TheoremId::A6, std::string_view("thm-a6")},
    std::pair{TheoremId::LemmaTrans, std::string_view("lemma-trans")},
    std::pair{TheoremId::PropPersist, std::string_view("prop-persist")},
    std::pair{TheoremId::PropTrivial, std::string_view("prop-trivial")},
    std::pair{TheoremId::CorBl, std::string_view("cor-bl")},
};

constexpr std::array kAllTheoremIds = {
    TheoremId::Mp,         TheoremId::A1,          TheoremId::A4,          TheoremId::A5a,
    TheoremId::A5b,        TheoremId::A6,          TheoremId::LemmaTrans,  TheoremId::PropPersist,
    TheoremId::PropTrivial, TheoremId::CorBl,
};

constexpr std::size_t kMaxSweepAtoms = 8;
constexpr std::uint64_t kChunkFrames = 64;

std::uint64_t low_mask(std::size_t bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// Counts and capped mismatches for one slice of the sweep.
struct Tally {
  std::uint64_t instances = 0;
  std::uint64_t skipped = 0;
  std::uint64_t condition_true = 0;
  std::uint64_t axiom_valid = 0;
  std::uint64_t forward = 0;
  std::uint64_t converse = 0;
  std::map<std::string, std::uint64_t> breakdown;
  std::vector<Mismatch> mismatches;
  std::vector<std::uint64_t> frames_by_size;
  std::vector<std::uint64_t> models_by_size;

  void merge(Tally&& o, std::size_t cap) {
    instances += o.instances;
    skipped += o.skipped;
    condition_true += o.condition_true;
    axiom_valid += o.axiom_valid;
    forward += o.forward;
    converse += o.converse;
    for (auto& [k, v] : o.breakdown) breakdown[k] += v;
    for (auto& m : o.mismatches) {
      if (mismatches.size() >= cap) break;
      mismatches.push_back(std::move(m));
    }
    if (frames_by_size.size() < o.frames_by_size.size()) frames_by_size.resize(o.frames_by_size.size());
    for (std::size_t i = 0; i < o.frames_by_size.size(); ++i) frames_by_size[i] += o.frames_by_size[i];
    if (models_by_size.size() < o.models_by_size.size()) models_by_size.resize(o.models_by_size.size());
    for (std::size_t i = 0; i < o.models_by_size.size(); ++i) models_by_size[i] += o.models_by_size[i];
  }
};

void bump(std::vector<std::uint64_t>& v, std::size_t n) {
  if (v.size() < n) v.resize(n);
  ++v[n - 1];
}

class Sweeper {
 public:
  Sweeper(TheoremId id, const SweepConfig& cfg)
      : id_(id), cap_(cfg.mismatch_cap), biconditional_(is_biconditional(id)),
        atoms_(sweep_atoms(cfg.atoms)) {}

  const std::vector<std::string>& atoms() const { return atoms_; }

  void frame(const Frame& f, Tally& t) const {
    bump(t.frames_by_size, f.size());
    switch (id_) {
      case TheoremId::Mp:
        record(t, is_reflexive(f), frame_scheme_holds(f, get_scheme("MP"), false), Model(f), {});
        break;
      case TheoremId::A1:
        record(t, rplus_transitive(f), frame_scheme_holds(f, get_scheme("A1"), false), Model(f), {});
        break;
      case TheoremId::A5a:
        record(t, r2_reflexive(f), frame_scheme_holds(f, get_scheme("A5a"), false), Model(f), {});
        break;
      case TheoremId::A6:
        if (!is_reflexive(f) || !is_transitive(f)) {
          ++t.skipped;
          break;
        }
        record(t, is_connected(f), frame_scheme_holds(f, get_scheme("A6"), true), Model(f), {});
        break;
      case TheoremId::LemmaTrans:
        record(t, is_reflexive(f) && rplus_transitive(f), is_transitive(f), Model(f), {});
        break;
      case TheoremId::PropTrivial: {
        bool all = true;
        std::string failed;
        for (const char* name : {"A2", "A3", "A7", "GODEL"}) {
          if (!frame_scheme_holds(f, get_scheme(name), false)) {
            all = false;
            failed += std::string(failed.empty() ? "" : ",") + name;
          }
        }
        record(t, true, all, Model(f), failed.empty() ? "" : "fails: " + failed);
        break;
      }
      case TheoremId::CorBl: {
        bool condition = is_reflexive(f) && is_transitive(f) && is_connected(f);
        bool valid = bl_holds_on_frame(f);
        record(t, condition, valid, Model(f), {});
        bool persistent_everywhere = true;
        for (const auto& s : bl_schemes())
          if (!frame_scheme_holds(f, s, true)) {
            persistent_everywhere = false;
            break;
          }
        if (persistent_everywhere && !condition)
          ++t.breakdown["persistent_only_valid_without_condition"];
        break;
      }
      case TheoremId::A4:
      case TheoremId::A5b: {
        // Frame-level converse: the scheme on every valuation forces the
        // relational half of the condition.
        const bool a4 = id_ == TheoremId::A4;
        bool relational = a4 ? rplus_reflexive(f) : rplus_transitive(f);
        bool frame_valid = frame_scheme_holds(f, get_scheme(a4 ? "A4" : "A5b"), false);
        if (frame_valid) ++t.breakdown["frame_level_valid"];
        if (frame_valid && !relational) ++t.breakdown["frame_level_converse_exceptions"];
        break;
      }
      case TheoremId::PropPersist:
        break;
    }
  }

  void model(const Model& m, Tally& t) const {
    bump(t.models_by_size, m.size());
    const Frame& f = m.frame();
    DefinableAlgebra algebra = definable_sets(m);
    switch (id_) {
      case TheoremId::A4:
      case TheoremId::A5b: {
        const bool a4 = id_ == TheoremId::A4;
        bool relational = a4 ? rplus_reflexive(f) : rplus_transitive(f);
        bool persistent = true;
        for (Node k = 0; k < f.size() && persistent; ++k)
          persistent = is_formula_persistent(f, algebra, a4 ? reach_plus(f, k) : reach_plusplus(f, k));
        bool valid = model_scheme_holds(m, algebra, get_scheme(a4 ? "A4" : "A5b"));
        if (valid && !persistent) ++t.breakdown["converse_persistency_failed"];
        if (valid && persistent && !relational) ++t.breakdown["converse_relational_only"];
        if (!valid && !persistent) ++t.breakdown["nonpersistent_models_refuted"];
        record(t, relational && persistent, valid, m,
               std::string(a4 ? "R+ reflexive=" : "R+ transitive=") + (relational ? "1" : "0") +
                   (a4 ? " R+ formula-persistent=" : " R++ formula-persistent=") +
                   (persistent ? "1" : "0"));
        break;
      }
      case TheoremId::PropPersist:
        for (Node k = 0; k < f.size(); ++k) {
          NodeSet region = reach_plus(f, k);
          bool hypothesis = is_transitive_on(f, region) && is_atom_persistent(m, region);
          bool conclusion = is_formula_persistent(f, algebra, region);
          record(t, hypothesis, conclusion, m, "k=" + std::to_string(k));
        }
        break;
      default:
        break;
    }
  }

 private:
  static bool rplus_transitive(const Frame& f) {
    for (Node k = 0; k < f.size(); ++k)
      if (!is_transitive_on(f, reach_plus(f, k))) return false;
    return true;
  }
  static bool rplus_reflexive(const Frame& f) {
    for (Node k = 0; k < f.size(); ++k)
      if (!is_reflexive_on(f, reach_plus(f, k))) return false;
    return true;
  }
  static bool r2_reflexive(const Frame& f) {
    for (Node k = 0; k < f.size(); ++k)
      if (!is_reflexive_on(f, n_step_image(f, k, 2))) return false;
    return true;
  }
  // MP, A1, A2, A3, A5a, A7 on every valuation; A4, A5b, A6 on
  // successor-closed (persistent) valuations.
  static bool bl_holds_on_frame(const Frame& f) {
    for (const auto& s : bl_schemes()) {
      bool persistent = s.name() == "A4" || s.name() == "A5b" || s.name() == "A6";
      if (!frame_scheme_holds(f, s, persistent)) return false;
    }
    return true;
  }

  void record(Tally& t, bool condition, bool valid, const Model& m, const std::string& detail) const {
    ++t.instances;
    if (condition) ++t.condition_true;
    if (valid) ++t.axiom_valid;
    bool mismatch = false;
    if (condition && !valid) {
      ++t.forward;
      mismatch = true;
    } else if (biconditional_ && valid && !condition) {
      ++t.converse;
      mismatch = true;
    }
    if (mismatch && t.mismatches.size() < cap_)
      t.mismatches.push_back(Mismatch{m, condition, valid, detail});
  }

  TheoremId id_;
  std::size_t cap_;
  bool biconditional_;
  std::vector<std::string> atoms_;
};

Model model_from_bits(const Frame& f, const std::vector<std::string>& atoms, std::uint64_t bits) {
  Valuation v;
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < atoms.size(); ++i)
    v[atoms[i]] = NodeSet::from_bits((bits >> (i * n)) & low_mask(n));
  return Model(f, std::move(v));
}

struct Chunk {
  std::size_t n;
  std::uint64_t begin;
  std::uint64_t end;
};

struct Sample {
  std::uint64_t code;
  std::uint64_t valuation;
};

unsigned worker_count(unsigned requested, std::size_t chunks) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(chunks, 1)));
}

// Runs `work(i, tally)` for every chunk index and merges tallies in index
// order, so the result is independent of scheduling.
template <typename Work>
Tally run_chunks(std::size_t chunks, unsigned threads, std::size_t cap, Work work) {
  std::vector<Tally> parts(chunks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < chunks; i = next++) work(i, parts[i]);
  };
  unsigned count = worker_count(threads, chunks);
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
  }
  Tally total;
  for (auto& p : parts) total.merge(std::move(p), cap);
  return total;
}

}  // namespace

FrameEnumeration::FrameEnumeration(std::size_t n, bool allow_large) : n_(n) {
  if (n == 0) throw Error("frame enumeration needs at least one node");
  if (n > 5) throw BudgetError("frame enumeration is limited to 5 nodes");
  if (n > 4 && !allow_large)
    throw BudgetError("exhaustive enumeration of " + std::to_string(n) +
                      "-node frames needs the large-sweep override");
  count_ = std::uint64_t{1} << (n * n);
}

FrameEnumeration enumerate_frames(std::size_t n, bool allow_large) {
  return FrameEnumeration(n, allow_large);
}

std::vector<std::string> sweep_atoms(std::size_t count) {
  static constexpr std::array<const char*, kMaxSweepAtoms> names = {"p", "q", "r", "s",
                                                                    "t", "u", "v", "w"};
  if (count > names.size()) throw Error("at most 8 sweep atoms are supported");
  return {names.begin(), names.begin() + static_cast<std::ptrdiff_t>(count)};
}

void validate(const SweepConfig& cfg) {
  if (cfg.max_nodes == 0) throw Error("max_nodes must be at least 1");
  if (cfg.max_nodes > 5) throw BudgetError("sweeps are limited to 5 nodes");
  if (cfg.atoms > kMaxSweepAtoms) throw BudgetError("sweeps are limited to 8 atoms");
  if (cfg.max_nodes * cfg.atoms > 64) throw BudgetError("valuation does not fit in 64 bits");
  if (cfg.mode == SweepMode::Exhaustive) {
    if (!cfg.allow_large && (cfg.max_nodes > 4 || cfg.atoms > 3))
      throw BudgetError("exhaustive sweeps are limited to 4 nodes and 3 atoms without the "
                        "large-sweep override");
  } else {
    if (!cfg.seed) throw Error("sampled sweeps need a seed");
    if (cfg.samples == 0) throw Error("sampled sweeps need a positive sample count");
  }
}

std::span<const TheoremId> all_theorems() { return kAllTheoremIds; }

std::string_view to_string(TheoremId id) {
  for (auto [t, name] : kTheorems)
    if (t == id) return name;
  return "?";
}

TheoremId theorem_from_string(std::string_view name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto [t, n] : kTheorems)
    if (n == lower) return t;
  std::string valid;
  for (auto [t, n] : kTheorems) valid += (valid.empty() ? "" : ", ") + std::string(n);
  throw UnknownNameError("unknown theorem '" + std::string(name) + "'; valid ids: " + valid);
}

bool is_model_level(TheoremId id) {
  return id == TheoremId::A4 || id == TheoremId::A5b || id == TheoremId::PropPersist;
}

bool is_biconditional(TheoremId id) {
  return !(id == TheoremId::LemmaTrans || id == TheoremId::PropPersist ||
           id == TheoremId::PropTrivial);
}

std::uint64_t VerificationReport::frames() const {
  std::uint64_t s = 0;
  for (auto c : frames_by_size) s += c;
  return s;
}

std::uint64_t VerificationReport::models() const {
  std::uint64_t s = 0;
  for (auto c : models_by_size) s += c;
  return s;
}

VerificationReport verify_theorem(std::string_view id, const SweepConfig& cfg) {
  return verify_theorem(theorem_from_string(id), cfg);
}

VerificationReport verify_theorem(TheoremId id, const SweepConfig& cfg) {
  validate(cfg);
  auto started = std::chrono::steady_clock::now();
  Sweeper sweeper(id, cfg);
  const bool model_level = is_model_level(id);
  const std::size_t atom_count = sweeper.atoms().size();

  Tally total;
  if (cfg.mode == SweepMode::Exhaustive) {
    std::vector<Chunk> chunks;
    for (std::size_t n = 1; n <= cfg.max_nodes; ++n) {
      std::uint64_t count = FrameEnumeration(n, cfg.allow_large).size();
      for (std::uint64_t b = 0; b < count; b += kChunkFrames)
        chunks.push_back({n, b, std::min(count, b + kChunkFrames)});
    }
    total = run_chunks(chunks.size(), cfg.threads, cfg.mismatch_cap, [&](std::size_t i, Tally& t) {
      const Chunk& c = chunks[i];
      const std::uint64_t valuations = std::uint64_t{1} << (c.n * atom_count);
      for (std::uint64_t code = c.begin; code < c.end; ++code) {
        Frame f = Frame::from_code(c.n, code);
        sweeper.frame(f, t);
        if (model_level)
          for (std::uint64_t v = 0; v < valuations; ++v)
            sweeper.model(model_from_bits(f, sweeper.atoms(), v), t);
      }
    });
  } else {
    const std::size_t n = cfg.max_nodes;
    std::mt19937_64 rng(*cfg.seed);
    std::vector<Sample> samples(cfg.samples);
    for (auto& s : samples) {
      s.code = rng() & low_mask(n * n);
      s.valuation = rng() & low_mask(n * atom_count);
    }
    const std::size_t chunks = (samples.size() + kChunkFrames - 1) / kChunkFrames;
    total = run_chunks(chunks, cfg.threads, cfg.mismatch_cap, [&](std::size_t i, Tally& t) {
      const std::size_t end = std::min<std::size_t>(samples.size(), (i + 1) * kChunkFrames);
      for (std::size_t j = i * kChunkFrames; j < end; ++j) {
        Frame f = Frame::from_code(n, samples[j].code);
        sweeper.frame(f, t);
        if (model_level) sweeper.model(model_from_bits(f, sweeper.atoms(), samples[j].valuation), t);
      }
    });
  }

  VerificationReport r;
  r.theorem = id;
  r.config = cfg;
  r.frames_by_size = std::move(total.frames_by_size);
  r.models_by_size = std::move(total.models_by_size);
  r.frames_by_size.resize(cfg.max_nodes);
  if (model_level) r.models_by_size.resize(cfg.max_nodes);
  r.instances = total.instances;
  r.skipped = total.skipped;
  r.condition_true = total.condition_true;
  r.axiom_valid = total.axiom_valid;
  r.forward_exceptions = total.forward;
  r.converse_exceptions = total.converse;
  r.breakdown = std::move(total.breakdown);
  std::vector<std::string> always;
  if (id == TheoremId::A4 || id == TheoremId::A5b)
    always = {"converse_persistency_failed", "converse_relational_only", "frame_level_valid",
              "frame_level_converse_exceptions", "nonpersistent_models_refuted"};
  else if (id == TheoremId::CorBl)
    always = {"persistent_only_valid_without_condition"};
  for (const auto& key : always) r.breakdown.try_emplace(key, 0);
  r.mismatches = std::move(total.mismatches);
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return r;
}

nlohmann::ordered_json to_json(const VerificationReport& r, bool include_timing) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["theorem"] = std::string(to_string(r.theorem));
  ordered_json cfg;
  cfg["max_nodes"] = r.config.max_nodes;
  cfg["atoms"] = r.config.atoms;
  cfg["mode"] = r.config.mode == SweepMode::Exhaustive ? "exhaustive" : "sampled";
  cfg["samples"] = r.config.samples;
  cfg["seed"] = r.config.seed ? ordered_json(*r.config.seed) : ordered_json(nullptr);
  j["config"] = cfg;
  ordered_json counts;
  counts["frames"] = r.frames();
  counts["frames_by_size"] = r.frames_by_size;
  counts["models"] = r.models();
  counts["models_by_size"] = r.models_by_size;
  counts["instances"] = r.instances;
  counts["skipped"] = r.skipped;
  counts["condition_true"] = r.condition_true;
  counts["axiom_valid"] = r.axiom_valid;
  counts["forward_exceptions"] = r.forward_exceptions;
  counts["converse_exceptions"] = r.converse_exceptions;
  counts["mismatches"] = r.mismatch_count();
  j["counts"] = counts;
  j["breakdown"] = ordered_json::object();
  for (const auto& [k, v] : r.breakdown) j["breakdown"][k] = v;
  j["mismatches"] = ordered_json::array();
  for (const auto& m : r.mismatches) {
    ordered_json e;
    e["condition"] = m.condition;
    e["valid"] = m.valid;
    if (!m.detail.empty()) e["detail"] = m.detail;
    e["model"] = to_json(to_document(m.model));
    j["mismatches"].push_back(std::move(e));
  }
  if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

namespace {

std::string sizes_descending(const std::vector<std::uint64_t>& by_size) {
  std::string out;
  for (auto it = by_size.rbegin(); it != by_size.rend(); ++it) {
    if (*it == 0) continue;
    if (!out.empty()) out += '+';
    out += std::to_string(*it);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << to_string(r.theorem) << ": " << sizes_descending(r.frames_by_size) << " frames";
  if (is_model_level(r.theorem)) os << ", " << sizes_descending(r.models_by_size) << " models";
  os << ", " << r.mismatch_count() << " mismatches\n";
  os << "  mode: " << (r.config.mode == SweepMode::Exhaustive ? "exhaustive" : "sampled")
     << ", max nodes " << r.config.max_nodes;
  if (is_model_level(r.theorem)) os << ", atoms " << r.config.atoms;
  if (r.config.mode == SweepMode::Sampled) os << ", samples " << r.config.samples << ", seed " << *r.config.seed;
  os << "\n";
  os << "  instances: " << r.instances << " (skipped " << r.skipped << "), condition true: "
     << r.condition_true << ", " << (is_biconditional(r.theorem) ? "scheme valid: " : "conclusion true: ")
     << r.axiom_valid << "\n";
  os << "  forward exceptions: " << r.forward_exceptions;
  if (is_biconditional(r.theorem)) os << ", converse exceptions: " << r.converse_exceptions;
  os << "\n";
  for (const auto& [k, v] : r.breakdown) os << "  " << k << ": " << v << "\n";
  for (const auto& m : r.mismatches) {
    os << "  mismatch: condition=" << (m.condition ? "true" : "false")
       << " valid=" << (m.valid ? "true" : "false");
    if (!m.detail.empty()) os << " (" << m.detail << ")";
    os << " " << to_json(to_document(m.model)).dump() << "\n";
  }
  os << "  elapsed: " << r.elapsed_ms << " ms\n";
  return os.str();
}

}  // namespace kfl
