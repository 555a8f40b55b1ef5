#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsat/rng.hpp"

namespace qsat {

/// Clauses-to-variables ratio used for generated instances (3-SAT phase
/// transition threshold).
inline constexpr double kClauseRatio = 4.267;

/// Variable cap for exhaustive solution counting (2^n enumeration).
inline constexpr std::uint32_t kDefaultExhaustiveLimit = 30;

/// Hard cap on variables per instance; assignments are stored as 64-bit
/// masks. Far above anything the state-vector side (n <= 26) can touch.
inline constexpr std::uint32_t kMaxVariables = 64;

/// One signed variable occurrence. sign() is +1 for x_v, -1 for !x_v.
struct Literal {
  std::uint32_t var = 0;
  bool negated = false;

  int sign() const { return negated ? -1 : +1; }
  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal& a, const Literal& b) {
    if (a.var != b.var) return a.var <=> b.var;
    return static_cast<int>(a.negated) <=> static_cast<int>(b.negated);
  }
};

/// Truth assignment for n <= 64 variables, bit i = value of x_i.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::uint32_t n, std::uint64_t bits);

  std::uint32_t size() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  bool value(std::uint32_t var) const { return (bits_ >> var) & 1u; }
  void set(std::uint32_t var, bool v);

  /// Bit string "b_{n-1} ... b_0" (variable 0 rightmost).
  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::uint32_t n_ = 0;
  std::uint64_t bits_ = 0;
};

/// Disjunction of 1..3 literals. Generated instances always have exactly 3
/// literals over distinct variables; shorter clauses arise from
/// simplification.
class Clause {
 public:
  Clause(std::initializer_list<Literal> lits);
  explicit Clause(std::span<const Literal> lits);

  std::uint32_t size() const { return size_; }
  const Literal& operator[](std::uint32_t i) const { return lits_[i]; }
  std::span<const Literal> literals() const { return {lits_.data(), size_}; }

  bool satisfied_by(const Assignment& a) const;
  bool contains_var(std::uint32_t var) const;
  std::uint32_t max_var() const;

  /// Literals sorted by (var, polarity); clause identity as a set.
  Clause normalized() const;

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::array<Literal, 3> lits_{};
  std::uint8_t size_ = 0;
};

/// A 3-SAT instance with a fixed clause order. Immutable after construction
/// apart from the cached solution count; safe to share across threads.
///
/// canonical() reports whether the generation criteria all hold:
///   1. clauses pairwise distinct as sets of signed literals,
///   2. every variable occurs at least once positive and once negated,
///   3. every clause has 3 literals over distinct variables,
///   4. clause count equals round(4.267 * n).
class SatInstance {
 public:
  SatInstance(std::uint32_t n, std::vector<Clause> clauses);

  std::uint32_t num_vars() const { return n_; }
  std::uint32_t num_clauses() const { return static_cast<std::uint32_t>(clauses_.size()); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::uint32_t i) const { return clauses_[i]; }

  bool canonical() const { return canonical_; }
  std::optional<std::uint64_t> solution_count() const { return solution_count_; }
  std::optional<std::uint64_t> generator_seed() const { return seed_; }

  /// Fill caches at build time; not thread-safe against concurrent readers.
  void cache_solution_count(std::uint64_t count) { solution_count_ = count; }
  void set_generator_seed(std::uint64_t seed) { seed_ = seed; }

 private:
  std::uint32_t n_;
  std::vector<Clause> clauses_;
  bool canonical_;
  std::optional<std::uint64_t> solution_count_;
  std::optional<std::uint64_t> seed_;
};

/// Number of clauses for an n-variable generated instance:
/// round(4.267 * n), half away from zero.
std::uint32_t clause_count_for(std::uint32_t n);

/// TRUE iff every clause has at least one literal satisfied by `a`.
/// Throws std::invalid_argument when a.size() != instance.num_vars().
bool evaluate(const SatInstance& instance, const Assignment& a);

struct SolutionCount {
  std::uint64_t count = 0;
  /// Populated when count <= the requested cap.
  std::vector<Assignment> solutions;
};

/// Exact solution count by exhaustive enumeration over all 2^n assignments.
/// Refuses n above `exhaustive_limit`.
SolutionCount count_solutions(const SatInstance& instance, std::uint64_t cap = 0,
                              std::uint32_t exhaustive_limit = kDefaultExhaustiveLimit);

struct GeneratorOptions {
  /// When set, whole instances are rejection-sampled until the exact
  /// solution count matches.
  std::optional<std::uint64_t> target_solutions;
  /// Whole-instance draws before giving up.
  std::uint64_t max_instance_draws = 1'000'000;
  std::uint32_t exhaustive_limit = kDefaultExhaustiveLimit;
};

class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& what, std::uint64_t attempts)
      : std::runtime_error(what), attempts(attempts) {}
  std::uint64_t attempts;
};

/// Random canonical instance: per clause, 3 distinct variables and uniform
/// polarities, redrawn on duplicates; an instance failing the
/// both-polarities criterion is discarded whole. Deterministic for fixed
/// (n, seed, options).
SatInstance generate_instance(std::uint32_t n, std::uint64_t seed,
                              const GeneratorOptions& options = {});

/// Instance with one extra clause that `solution` falsifies, so the found
/// solution is excluded from the search. The clause takes the given
/// variables (default: the 3 lowest indices) with polarities opposite to
/// `solution`. Result is non-canonical.
SatInstance add_exclusion_clause(const SatInstance& instance, const Assignment& solution,
                                 std::optional<std::array<std::uint32_t, 3>> vars = std::nullopt);

/// Fix x_var := value. Clauses satisfied by the fixed literal are dropped,
/// the opposite literal is deleted from the rest (clauses may shrink to
/// length 2 or 1), and a unit clause pinning the variable is appended so
/// the instance still constrains x_var. Variable indices are not
/// renumbered. Returns nullopt when some clause shrinks to length 0 (the
/// fixed value is inconsistent with the instance).
std::optional<SatInstance> assign_and_simplify(const SatInstance& instance, std::uint32_t var,
                                               bool value);

/// Individual generation-criteria checks (also used to recompute the
/// canonical flag on parse).
bool clauses_distinct(const std::vector<Clause>& clauses);
bool vars_in_both_polarities(std::uint32_t n, const std::vector<Clause>& clauses);
bool clauses_are_3var(const std::vector<Clause>& clauses);

}  // namespace qsat
