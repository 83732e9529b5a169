#include "occam/enumerator.hpp"

#include <cmath>

#include "occam/error.hpp"
#include "occam/parallel.hpp"
#include "occam/trm1.hpp"

namespace occam::tinyref {

void Budget::validate() const {
  if (max_len % kOpcodeBits != 0) throw error(errc::invalid_budget, "L must be a multiple of 3");
  if (max_len > 60) throw error(errc::invalid_budget, "L must be at most 60");
  if (max_steps == 0) throw error(errc::invalid_budget, "S must be at least 1");
}

namespace {

mpz_class to_mpz(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

// Depth-first walk below `machine`, which already holds `length` program
// bits. `from` is the shortest string length this node can be minimal for.
template <typename Visitor>
void walk(Machine machine, unsigned length, std::size_t from, const Budget& budget, Visitor& visitor) {
  const auto status = machine.run();
  const BitString& out = machine.output();
  if (!visitor.visit(out, from, length)) return;
  if (status != Machine::Status::needs_input || length + kOpcodeBits > budget.max_len) return;
  for (unsigned op = 0; op < kOpcodeCount; ++op) {
    Machine child = machine;
    child.feed(static_cast<Op>(op));
    walk(std::move(child), length + kOpcodeBits, out.size() + 1, budget, visitor);
  }
}

// Visits the root, then fans its eight children out over workers, one
// visitor per child, and returns the per-child visitors in opcode order.
template <typename Visitor, typename MakeVisitor>
std::vector<Visitor> walk_all(const BitString& side, const Budget& budget, std::size_t output_limit, unsigned workers,
                              Visitor& root_visitor, MakeVisitor make) {
  budget.validate();
  Machine root(side.raw(), budget.max_steps, output_limit);
  const auto status = root.run();
  std::vector<Visitor> children;
  if (!root_visitor.visit(root.output(), 0, 0)) return children;
  if (status != Machine::Status::needs_input || budget.max_len < kOpcodeBits) return children;
  for (unsigned op = 0; op < kOpcodeCount; ++op) children.push_back(make());
  const std::size_t from = root.output().size() + 1;
  parallel_for(kOpcodeCount, workers, [&](std::size_t op) {
    Machine child = root;
    child.feed(static_cast<Op>(op));
    walk(std::move(child), kOpcodeBits, from, budget, children[op]);
  });
  return children;
}

struct TableVisitor {
  MTable table;

  bool visit(const BitString& out, std::size_t from, unsigned length) {
    const std::size_t to = std::min<std::size_t>(out.size(), table.depth());
    std::uint64_t value = 0;
    for (std::size_t j = 0; j <= to; ++j) {
      if (j > 0) value = (value << 1) | out[j - 1];
      if (j >= from) table.entry(j, value).add(length, table.budget().max_len);
    }
    return out.size() < table.depth();
  }
};

struct PatternVisitor {
  const Pattern* pattern;
  unsigned max_len;
  std::map<std::uint64_t, MassEntry> found;

  bool visit(const BitString& out, std::size_t from, unsigned length) {
    const std::size_t n = pattern->size();
    const std::size_t checked = std::min(out.size(), n);
    std::uint64_t value = 0;
    for (std::size_t j = 0; j < checked; ++j) {
      const auto& want = (*pattern)[j];
      if (want && *want != out[j]) return false;
      value = (value << 1) | out[j];
    }
    if (out.size() >= n) {
      if (from <= n) found[value].add(length, max_len);
      return false;
    }
    return true;
  }
};

}  // namespace

MTable::MTable(unsigned depth, Budget budget) : depth_(depth), budget_(budget) {
  if (depth > kMaxTableDepth) throw error(errc::too_large, "table depth exceeds " + std::to_string(kMaxTableDepth));
  levels_.resize(depth + 1);
  for (unsigned m = 0; m <= depth; ++m) levels_[m].resize(std::size_t{1} << m);
}

const MassEntry& MTable::entry(const BitString& x) const {
  if (x.size() > depth_) throw error(errc::out_of_range, "string longer than table depth");
  return levels_[x.size()][x.value()];
}

MEstimate MTable::estimate(const BitString& x) const {
  const auto& e = entry(x);
  MEstimate est;
  est.value = dyadic(e.weight, budget_.max_len);
  est.programs_counted = e.programs;
  est.shortest = e.shortest;
  est.max_len = budget_.max_len;
  est.max_steps = budget_.max_steps;
  return est;
}

mpq_class MTable::level_sum(unsigned m) const {
  if (m > depth_) throw error(errc::out_of_range, "level beyond table depth");
  mpz_class total = 0;
  for (const auto& e : levels_[m]) total += to_mpz(e.weight);
  mpq_class sum(total, mpz_class(1) << budget_.max_len);
  sum.canonicalize();
  return sum;
}

MTable& MTable::operator+=(const MTable& other) {
  for (unsigned m = 0; m <= depth_; ++m) {
    for (std::size_t v = 0; v < levels_[m].size(); ++v) levels_[m][v] += other.levels_[m][v];
  }
  return *this;
}

MTable enumerate_table(unsigned depth, const BitString& side, Budget budget, unsigned workers) {
  TableVisitor root{MTable(depth, budget)};
  auto children = walk_all(side, budget, depth, workers, root, [&] { return TableVisitor{MTable(depth, budget)}; });
  for (const auto& child : children) root.table += child.table;
  return std::move(root.table);
}

std::map<std::uint64_t, MassEntry> enumerate_matching(const Pattern& pattern, const BitString& side, Budget budget,
                                                      unsigned workers) {
  if (pattern.size() > 64) throw error(errc::too_large, "pattern longer than 64 bits");
  PatternVisitor root{&pattern, budget.max_len, {}};
  auto children = walk_all(side, budget, pattern.size(), workers, root,
                           [&] { return PatternVisitor{&pattern, budget.max_len, {}}; });
  for (const auto& child : children) {
    for (const auto& [value, entry] : child.found) root.found[value] += entry;
  }
  return std::move(root.found);
}

MEstimate approx_M(const BitString& x, const BitString& side, Budget budget) {
  budget.validate();
  Pattern pattern(x.begin(), x.end());
  const auto found = enumerate_matching(pattern, side, budget);
  MEstimate est;
  est.max_len = budget.max_len;
  est.max_steps = budget.max_steps;
  est.value = 0;
  if (const auto it = found.find(x.empty() ? 0 : x.value()); it != found.end()) {
    est.value = dyadic(it->second.weight, budget.max_len);
    est.programs_counted = it->second.programs;
    est.shortest = it->second.shortest;
  }
  return est;
}

mpq_class dyadic(std::uint64_t weight, unsigned max_len) {
  mpq_class q(to_mpz(weight), mpz_class(1) << max_len);
  q.canonicalize();
  return q;
}

double code_length_bits(std::uint64_t weight, unsigned max_len) {
  if (weight == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(max_len) - std::log2(static_cast<double>(weight));
}

double approx_KM(const BitString& x, const BitString& side, Budget budget) {
  budget.validate();
  Pattern pattern(x.begin(), x.end());
  const auto found = enumerate_matching(pattern, side, budget);
  const auto it = found.find(x.empty() ? 0 : x.value());
  if (it == found.end() || it->second.weight == 0) {
    throw error(errc::no_program_found, "no program of at most " + std::to_string(budget.max_len) +
                                            " bits outputs " + (x.empty() ? std::string("the empty string") : x.str()));
  }
  return code_length_bits(it->second.weight, budget.max_len);
}

MnTable::MnTable(MTable masses) : masses_(std::move(masses)) {
  const unsigned depth = masses_.depth();
  levels_.resize(depth + 1);
  fallback_.resize(depth + 1);
  levels_[0] = {mpq_class(1)};
  for (unsigned m = 0; m <= depth; ++m) fallback_[m].assign(std::size_t{1} << m, false);
  for (unsigned m = 0; m < depth; ++m) {
    levels_[m + 1].resize(std::size_t{1} << (m + 1));
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
      const std::uint64_t c0 = masses_.entry(m + 1, 2 * v).weight;
      const std::uint64_t c1 = masses_.entry(m + 1, 2 * v + 1).weight;
      const mpq_class& parent = levels_[m][v];
      if (c0 + c1 == 0) {
        fallback_[m][v] = true;
        ++fallback_count_;
        levels_[m + 1][2 * v] = parent / 2;
        levels_[m + 1][2 * v + 1] = parent / 2;
        continue;
      }
      const mpz_class z0 = to_mpz(c0);
      const mpz_class z1 = to_mpz(c1);
      mpq_class left = parent * mpq_class(z0, z0 + z1);
      left.canonicalize();
      levels_[m + 1][2 * v] = left;
      levels_[m + 1][2 * v + 1] = parent - left;
    }
  }
}

const mpq_class& MnTable::mn(const BitString& x) const {
  if (x.size() > depth()) throw error(errc::out_of_range, "string longer than table depth");
  return levels_[x.size()][x.value()];
}

bool MnTable::fallback(const BitString& x) const {
  if (x.size() > depth()) throw error(errc::out_of_range, "string longer than table depth");
  return fallback_[x.size()][x.value()];
}

mpq_class MnTable::level_sum(unsigned m) const {
  if (m > depth()) throw error(errc::out_of_range, "level beyond table depth");
  mpq_class total = 0;
  for (const auto& q : levels_[m]) total += q;
  return total;
}

MnTable build_mn(unsigned depth, const BitString& side, Budget budget, unsigned workers) {
  if (depth < 1) throw error(errc::out_of_range, "Mn depth must be at least 1");
  return MnTable(enumerate_table(depth, side, budget, workers));
}

}  // namespace occam::tinyref
