#pragma once

// Lower bounds on the Solomonoff semimeasure M under TRM-1, computed by a
// depth-first walk over every program of at most L bits.
//
// A program p "qualifies" for x when its run (step budget S) reads all of p
// and writes output extending x. Only minimal qualifying programs are
// counted: those with no qualifying proper prefix. Along a walk the
// qualifying programs are exactly the programs that were asked for another
// opcode, so p is minimal for x iff the output of p's parent is shorter
// than x and x is a prefix of p's output. Minimal programs for strings of a
// fixed length form a prefix-free set, hence sum_{x in B^m} M(x) <= 1.
//
// All masses are integers counting units of 2^-L, so sums are exact and
// independent of summation order.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "occam/bits.hpp"

namespace occam::tinyref {

struct Budget {
  unsigned max_len = 18;         // L, a multiple of 3, at most 60
  std::uint64_t max_steps = 1000;  // S >= 1

  void validate() const;
};

inline constexpr unsigned kNoProgram = std::numeric_limits<unsigned>::max();

// Mass accumulated for one string.
struct MassEntry {
  std::uint64_t weight = 0;          // in units of 2^-L
  std::uint64_t programs = 0;        // minimal programs counted
  unsigned shortest = kNoProgram;    // length of the shortest one (Km upper bound)

  void add(unsigned length, unsigned max_len) {
    weight += std::uint64_t{1} << (max_len - length);
    ++programs;
    if (length < shortest) shortest = length;
  }
  MassEntry& operator+=(const MassEntry& other) {
    weight += other.weight;
    programs += other.programs;
    if (other.shortest < shortest) shortest = other.shortest;
    return *this;
  }
};

struct MEstimate {
  mpq_class value;                  // lower bound on M(x)
  std::uint64_t programs_counted = 0;
  unsigned shortest = kNoProgram;   // Km upper bound in bits, kNoProgram if none
  unsigned max_len = 0;
  std::uint64_t max_steps = 0;
};

// M lower bounds for every string of length <= depth.
class MTable {
 public:
  MTable(unsigned depth, Budget budget);

  [[nodiscard]] unsigned depth() const noexcept { return depth_; }
  [[nodiscard]] const Budget& budget() const noexcept { return budget_; }
  [[nodiscard]] const MassEntry& entry(const BitString& x) const;
  [[nodiscard]] MassEntry& entry(std::size_t length, std::uint64_t value) { return levels_[length][value]; }
  [[nodiscard]] const MassEntry& entry(std::size_t length, std::uint64_t value) const { return levels_[length][value]; }
  [[nodiscard]] MEstimate estimate(const BitString& x) const;
  // sum_{x in B^m} M(x) as an exact rational.
  [[nodiscard]] mpq_class level_sum(unsigned m) const;

  MTable& operator+=(const MTable& other);

 private:
  unsigned depth_;
  Budget budget_;
  std::vector<std::vector<MassEntry>> levels_;
};

inline constexpr unsigned kMaxTableDepth = 16;

// Walks all programs once and fills the table for strings up to `depth`
// (at most kMaxTableDepth). The walk is split across `workers` threads by
// first opcode; the result does not depend on the worker count.
[[nodiscard]] MTable enumerate_table(unsigned depth, const BitString& side, Budget budget, unsigned workers = 1);

// Constraint on outputs of a fixed length: nullopt = free position.
using Pattern = std::vector<std::optional<std::uint8_t>>;

// Mass of every string of length pattern.size() that agrees with `pattern`,
// keyed by its big-endian value (pattern.size() <= 64). Strings with zero
// mass are absent.
[[nodiscard]] std::map<std::uint64_t, MassEntry> enumerate_matching(const Pattern& pattern, const BitString& side,
                                                                    Budget budget, unsigned workers = 1);

// sum of 2^-l(p) over minimal programs for x; a lower bound on M(x).
[[nodiscard]] MEstimate approx_M(const BitString& x, const BitString& side, Budget budget);

// -log2 approx_M(x): an upper bound on KM(x). Throws no_program_found when
// no program within the budget produces x.
[[nodiscard]] double approx_KM(const BitString& x, const BitString& side, Budget budget);

// weight * 2^-max_len as a canonical rational.
[[nodiscard]] mpq_class dyadic(std::uint64_t weight, unsigned max_len);

// -log2 of an exact dyadic mass; +inf for zero.
[[nodiscard]] double code_length_bits(std::uint64_t weight, unsigned max_len);

// Solomonoff's normalisation of M into a measure:
//   Mn(e) = 1,  Mn(xb) = Mn(x) M(xb) / (M(x0) + M(x1)).
// When M(x0) + M(x1) = 0 the mass of x splits evenly and x is flagged.
class MnTable {
 public:
  MnTable(MTable masses);

  [[nodiscard]] unsigned depth() const noexcept { return masses_.depth(); }
  [[nodiscard]] const MTable& masses() const noexcept { return masses_; }
  [[nodiscard]] const mpq_class& mn(const BitString& x) const;
  [[nodiscard]] const mpq_class& mn(std::size_t length, std::uint64_t value) const { return levels_[length][value]; }
  // True when x's children carried no mass and were split evenly.
  [[nodiscard]] bool fallback(const BitString& x) const;
  [[nodiscard]] std::size_t fallback_count() const noexcept { return fallback_count_; }
  [[nodiscard]] mpq_class level_sum(unsigned m) const;

 private:
  MTable masses_;
  std::vector<std::vector<mpq_class>> levels_;
  std::vector<std::vector<bool>> fallback_;
  std::size_t fallback_count_ = 0;
};

[[nodiscard]] MnTable build_mn(unsigned depth, const BitString& side, Budget budget, unsigned workers = 1);

}  // namespace occam::tinyref
