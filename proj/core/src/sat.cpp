#include "qsat/sat.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qsat {

Assignment::Assignment(std::uint32_t n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n > kMaxVariables) {
    throw std::invalid_argument("Assignment: at most " + std::to_string(kMaxVariables) +
                                " variables supported, got " + std::to_string(n));
  }
  if (n < 64) bits_ &= (std::uint64_t{1} << n) - 1;
}

void Assignment::set(std::uint32_t var, bool v) {
  if (var >= n_) throw std::invalid_argument("Assignment::set: variable out of range");
  if (v)
    bits_ |= std::uint64_t{1} << var;
  else
    bits_ &= ~(std::uint64_t{1} << var);
}

std::string Assignment::to_string() const {
  std::string s(n_, '0');
  for (std::uint32_t i = 0; i < n_; ++i)
    if (value(i)) s[n_ - 1 - i] = '1';
  return s;
}

Clause::Clause(std::initializer_list<Literal> lits)
    : Clause(std::span<const Literal>(lits.begin(), lits.size())) {}

Clause::Clause(std::span<const Literal> lits) {
  if (lits.empty() || lits.size() > 3) {
    throw std::invalid_argument("Clause: length must be 1..3, got " + std::to_string(lits.size()));
  }
  size_ = static_cast<std::uint8_t>(lits.size());
  std::copy(lits.begin(), lits.end(), lits_.begin());
}

bool Clause::satisfied_by(const Assignment& a) const {
  for (std::uint32_t i = 0; i < size_; ++i) {
    if (a.value(lits_[i].var) != lits_[i].negated) return true;
  }
  return false;
}

bool Clause::contains_var(std::uint32_t var) const {
  for (std::uint32_t i = 0; i < size_; ++i)
    if (lits_[i].var == var) return true;
  return false;
}

std::uint32_t Clause::max_var() const {
  std::uint32_t m = 0;
  for (std::uint32_t i = 0; i < size_; ++i) m = std::max(m, lits_[i].var);
  return m;
}

Clause Clause::normalized() const {
  Clause c = *this;
  std::sort(c.lits_.begin(), c.lits_.begin() + c.size_);
  return c;
}

bool clauses_distinct(const std::vector<Clause>& clauses) {
  std::set<std::array<Literal, 3>> seen;
  for (const Clause& c : clauses) {
    Clause n = c.normalized();
    std::array<Literal, 3> key{};
    for (std::uint32_t i = 0; i < n.size(); ++i) key[i] = n[i];
    // pad so length-2 clauses cannot collide with length-3 ones
    for (std::uint32_t i = n.size(); i < 3; ++i) key[i] = Literal{UINT32_MAX, true};
    if (!seen.insert(key).second) return false;
  }
  return true;
}

bool vars_in_both_polarities(std::uint32_t n, const std::vector<Clause>& clauses) {
  std::vector<bool> pos(n, false), neg(n, false);
  for (const Clause& c : clauses) {
    for (const Literal& l : c.literals()) {
      if (l.var >= n) return false;
      (l.negated ? neg : pos)[l.var] = true;
    }
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (!pos[v] || !neg[v]) return false;
  return true;
}

bool clauses_are_3var(const std::vector<Clause>& clauses) {
  for (const Clause& c : clauses) {
    if (c.size() != 3) return false;
    if (c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var) return false;
  }
  return true;
}

std::uint32_t clause_count_for(std::uint32_t n) {
  return static_cast<std::uint32_t>(std::floor(kClauseRatio * n + 0.5));
}

SatInstance::SatInstance(std::uint32_t n, std::vector<Clause> clauses)
    : n_(n), clauses_(std::move(clauses)) {
  if (n > kMaxVariables) {
    throw std::invalid_argument("SatInstance: at most " + std::to_string(kMaxVariables) +
                                " variables supported");
  }
  for (const Clause& c : clauses_) {
    if (c.max_var() >= n) throw std::invalid_argument("SatInstance: clause variable out of range");
  }
  canonical_ = clauses_are_3var(clauses_) && clauses_distinct(clauses_) &&
               vars_in_both_polarities(n_, clauses_) && num_clauses() == clause_count_for(n_);
}

bool evaluate(const SatInstance& instance, const Assignment& a) {
  if (a.size() != instance.num_vars()) {
    throw std::invalid_argument("evaluate: assignment has " + std::to_string(a.size()) +
                                " variables, instance has " +
                                std::to_string(instance.num_vars()));
  }
  for (const Clause& c : instance.clauses()) {
    if (!c.satisfied_by(a)) return false;
  }
  return true;
}

namespace {

// Masks such that assignment z falsifies the clause iff
// (z & pos) == 0 && (z & neg) == neg.
struct ClauseMasks {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

ClauseMasks masks_of(const Clause& c) {
  ClauseMasks m;
  for (const Literal& l : c.literals()) {
    (l.negated ? m.neg : m.pos) |= std::uint64_t{1} << l.var;
  }
  return m;
}

// Deposits the bits of `packed` into the zero positions of `hole_mask`,
// i.e. enumerates indices whose bits at hole_mask positions are free.
std::uint64_t deposit_bits(std::uint64_t packed, std::uint64_t free_mask) {
  std::uint64_t out = 0;
  while (free_mask) {
    std::uint64_t low = free_mask & (~free_mask + 1);
    if (packed & 1u) out |= low;
    packed >>= 1;
    free_mask ^= low;
  }
  return out;
}

}  // namespace

SolutionCount count_solutions(const SatInstance& instance, std::uint64_t cap,
                              std::uint32_t exhaustive_limit) {
  const std::uint32_t n = instance.num_vars();
  if (n > exhaustive_limit || n > 62) {
    throw std::invalid_argument("count_solutions: n=" + std::to_string(n) +
                                " exceeds the exhaustive limit of " +
                                std::to_string(std::min(exhaustive_limit, 62u)));
  }
  const std::uint64_t dim = std::uint64_t{1} << n;

  // Mark assignments falsified by each clause in a bitmap. A clause over k
  // variables falsifies exactly 2^(n-k) assignments, so this touches
  // Nc * 2^(n-3) entries instead of evaluating Nc clauses at all 2^n points.
  std::vector<std::uint64_t> falsified((dim + 63) / 64, 0);
  const std::uint64_t all_vars = (n == 64) ? ~std::uint64_t{0} : dim - 1;
  for (const Clause& c : instance.clauses()) {
    const ClauseMasks m = masks_of(c);
    const std::uint64_t fixed = m.neg;                       // falsifying values on clause vars
    const std::uint64_t free_mask = all_vars & ~(m.pos | m.neg);
    const std::uint32_t free_bits = n - c.size();
    for (std::uint64_t packed = 0; packed < (std::uint64_t{1} << free_bits); ++packed) {
      const std::uint64_t z = fixed | deposit_bits(packed, free_mask);
      falsified[z >> 6] |= std::uint64_t{1} << (z & 63);
    }
  }

  SolutionCount result;
  for (std::uint64_t w = 0; w < falsified.size(); ++w) {
    result.count += 64 - static_cast<std::uint64_t>(std::popcount(falsified[w]));
  }
  // trailing bits past dim in the last word were never set; subtract them
  if (dim % 64 != 0) result.count -= 64 - dim % 64;

  if (result.count <= cap) {
    result.solutions.reserve(result.count);
    for (std::uint64_t z = 0; z < dim; ++z) {
      if (!((falsified[z >> 6] >> (z & 63)) & 1u)) result.solutions.emplace_back(n, z);
    }
  }
  return result;
}

namespace {

std::vector<Clause> draw_clause_set(std::uint32_t n, std::uint32_t n_clauses, Rng& rng) {
  std::vector<Clause> clauses;
  clauses.reserve(n_clauses);
  std::set<std::array<Literal, 3>> seen;
  while (clauses.size() < n_clauses) {
    std::array<std::uint32_t, 3> vars{};
    vars[0] = static_cast<std::uint32_t>(rng.below(n));
    do {
      vars[1] = static_cast<std::uint32_t>(rng.below(n));
    } while (vars[1] == vars[0]);
    do {
      vars[2] = static_cast<std::uint32_t>(rng.below(n));
    } while (vars[2] == vars[0] || vars[2] == vars[1]);
    const std::uint64_t pol = rng.next();
    std::array<Literal, 3> lits{Literal{vars[0], (pol & 1) != 0},
                                Literal{vars[1], (pol & 2) != 0},
                                Literal{vars[2], (pol & 4) != 0}};
    std::array<Literal, 3> key = lits;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;  // duplicate clause: redraw
    clauses.emplace_back(std::span<const Literal>(lits.data(), 3));
  }
  return clauses;
}

}  // namespace

SatInstance generate_instance(std::uint32_t n, std::uint64_t seed,
                              const GeneratorOptions& options) {
  if (n < 4) {
    throw std::invalid_argument("generate_instance: n must be >= 4, got " + std::to_string(n));
  }
  if (n > kMaxVariables) {
    throw std::invalid_argument("generate_instance: n exceeds the supported maximum of " +
                                std::to_string(kMaxVariables));
  }
  if (options.target_solutions && n > options.exhaustive_limit) {
    throw std::invalid_argument(
        "generate_instance: target solution count requires n <= exhaustive limit of " +
        std::to_string(options.exhaustive_limit));
  }

  const std::uint32_t n_clauses = clause_count_for(n);
  Rng rng(derive_seed(seed, 0));
  for (std::uint64_t attempt = 1; attempt <= options.max_instance_draws; ++attempt) {
    std::vector<Clause> clauses = draw_clause_set(n, n_clauses, rng);
    if (!vars_in_both_polarities(n, clauses)) continue;  // discard whole instance

    // fixed random clause order, kept for the lifetime of the instance
    for (std::size_t i = clauses.size(); i > 1; --i) {
      std::swap(clauses[i - 1], clauses[rng.below(i)]);
    }

    SatInstance instance(n, std::move(clauses));
    instance.set_generator_seed(seed);
    if (!options.target_solutions) return instance;

    SolutionCount sc = count_solutions(instance, 0, options.exhaustive_limit);
    if (sc.count == *options.target_solutions) {
      instance.cache_solution_count(sc.count);
      return instance;
    }
  }
  throw GenerationError("generate_instance: no instance with the target solution count after " +
                            std::to_string(options.max_instance_draws) + " draws",
                        options.max_instance_draws);
}

SatInstance add_exclusion_clause(const SatInstance& instance, const Assignment& solution,
                                 std::optional<std::array<std::uint32_t, 3>> vars) {
  if (!evaluate(instance, solution)) {
    throw std::invalid_argument("add_exclusion_clause: assignment does not satisfy the instance");
  }
  if (instance.num_vars() < 3) {
    throw std::invalid_argument("add_exclusion_clause: instance has fewer than 3 variables");
  }
  std::array<std::uint32_t, 3> v = vars.value_or(std::array<std::uint32_t, 3>{0, 1, 2});
  for (std::uint32_t x : v) {
    if (x >= instance.num_vars())
      throw std::invalid_argument("add_exclusion_clause: variable out of range");
  }
  if (v[0] == v[1] || v[0] == v[2] || v[1] == v[2]) {
    throw std::invalid_argument("add_exclusion_clause: variables must be distinct");
  }
  // polarity opposite to the solution's value: the clause is falsified
  // exactly by assignments agreeing with it on these three variables
  std::vector<Clause> clauses = instance.clauses();
  clauses.push_back(Clause{Literal{v[0], solution.value(v[0])},
                           Literal{v[1], solution.value(v[1])},
                           Literal{v[2], solution.value(v[2])}});
  return SatInstance(instance.num_vars(), std::move(clauses));
}

std::optional<SatInstance> assign_and_simplify(const SatInstance& instance, std::uint32_t var,
                                               bool value) {
  if (var >= instance.num_vars()) {
    throw std::invalid_argument("assign_and_simplify: variable out of range");
  }
  std::vector<Clause> out;
  out.reserve(instance.num_clauses() + 1);
  for (const Clause& c : instance.clauses()) {
    bool satisfied = false;
    std::vector<Literal> kept;
    for (const Literal& l : c.literals()) {
      if (l.var != var) {
        kept.push_back(l);
      } else if (l.negated != value) {
        satisfied = true;  // fixed literal satisfies the clause
        break;
      }
      // opposite literal: dropped
    }
    if (satisfied) continue;
    if (kept.empty()) return std::nullopt;  // conflict: clause shrank to length 0
    out.emplace_back(std::span<const Literal>(kept.data(), kept.size()));
  }
  // pin the fixed variable so the instance still encodes the reduction
  out.push_back(Clause{Literal{var, !value}});
  return SatInstance(instance.num_vars(), std::move(out));
}

}  // namespace qsat
