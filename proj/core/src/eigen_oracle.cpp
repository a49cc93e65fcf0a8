#include "etale/eigen_oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <thread>

#include "etale/covering_count.hpp"
#include "etale/errors.hpp"
#include "etale/poly.hpp"

namespace etale {
namespace {

struct SparseEntry {
  std::size_t row;
  Residue value;
};

struct ChunkTally {
  std::vector<std::uint64_t> solutions;   // indexed by lambda
  std::vector<std::uint64_t> primitive;   // indexed by lambda
  std::vector<std::uint64_t> directions;  // indexed by lambda
  std::uint64_t scanned = 0;
  std::uint64_t orbits = 0;
  std::uint64_t violations = 0;

  explicit ChunkTally(std::uint64_t m) : solutions(m), primitive(m), directions(m) {}
};

class Enumerator {
 public:
  explicit Enumerator(const ModMatrix& matrix) : matrix_(matrix), m_(matrix.m()), dim_(matrix.dimension()) {
    columns_.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        if (matrix.at(i, j) != 0) columns_[j].push_back({i, matrix.at(i, j)});
    for (Residue u = 1; u < m_; ++u) {
      if (std::gcd(u, m_) != 1) continue;
      units_.push_back(u);
      if (u != 1) candidates_.push_back(u);
    }
    if (m_ * units_.size() <= (1U << 22U)) {
      times_.resize(m_ * m_);
      for (Residue a = 0; a < m_; ++a)
        for (Residue x = 0; x < m_; ++x) times_[a * m_ + x] = mul_mod(a, x, m_);
    }
  }

  void scan(std::uint64_t begin, std::uint64_t end, ChunkTally& tally) const {
    if (begin >= end) return;
    std::vector<Residue> v(dim_);
    std::uint64_t idx = begin;
    for (std::size_t j = dim_; j-- > 0;) {
      v[j] = idx % m_;
      idx /= m_;
    }
    std::vector<Residue> w = matrix_.apply(v);
    for (std::uint64_t count = begin; count < end; ++count) {
      visit(v, w, tally);
      for (std::size_t j = dim_; j-- > 0;) {
        // Each digit step (including the wrap m-1 -> 0) adds column j once mod m.
        for (const auto& e : columns_[j]) w[e.row] = add_mod(w[e.row], e.value, m_);
        if (++v[j] < m_) break;
        v[j] = 0;
      }
    }
    tally.scanned += end - begin;
  }

 private:
  Residue times(Residue a, Residue x) const {
    return times_.empty() ? mul_mod(a, x, m_) : times_[a * m_ + x];
  }

  void visit(const std::vector<Residue>& v, const std::vector<Residue>& w, ChunkTally& tally) const {
    for (Residue lambda : candidates_) {
      bool eigen = true;
      for (std::size_t i = 0; i < dim_; ++i) {
        if (w[i] != times(lambda, v[i])) {
          eigen = false;
          break;
        }
      }
      if (!eigen) continue;
      ++tally.solutions[lambda];
      if (!is_primitive(v, m_)) continue;
      ++tally.primitive[lambda];
      check_orbit(v, lambda, tally);
    }
  }

  // The unit-scalar orbit of a primitive v must have exactly phi(m) members;
  // v counts as a direction when it is the lexicographically least member.
  void check_orbit(const std::vector<Residue>& v, Residue lambda, ChunkTally& tally) const {
    std::vector<std::vector<Residue>> orbit;
    orbit.reserve(units_.size());
    bool least = true;
    for (Residue u : units_) {
      std::vector<Residue> uv(dim_);
      for (std::size_t i = 0; i < dim_; ++i) uv[i] = times(u, v[i]);
      if (uv < v) least = false;
      orbit.push_back(std::move(uv));
    }
    std::sort(orbit.begin(), orbit.end());
    const auto distinct =
        static_cast<std::size_t>(std::unique(orbit.begin(), orbit.end()) - orbit.begin());
    if (distinct != units_.size()) ++tally.violations;
    if (least) {
      ++tally.orbits;
      ++tally.directions[lambda];
    }
  }

  const ModMatrix& matrix_;
  std::uint64_t m_;
  std::size_t dim_;
  std::vector<std::vector<SparseEntry>> columns_;
  std::vector<Residue> units_;
  std::vector<Residue> candidates_;
  std::vector<Residue> times_;
};

int exact_log(std::uint64_t value, std::uint64_t base) {
  int r = 0;
  while (value > 1) {
    if (value % base != 0) return -1;
    value /= base;
    ++r;
  }
  return value == 1 ? r : -1;
}

bool is_one_mod_some_prime(Residue lambda, const FactoredModulus& m) {
  for (const auto& f : m.factors())
    if (lambda % f.p == 1) return true;
  return false;
}

int deck_dimension(int g, int n) { return 2 * (n * (g - 1) + 1); }

}  // namespace

std::string to_string(OracleMethod method) {
  return method == OracleMethod::Enumerate ? "enumerate" : "kernel";
}

std::uint64_t enumeration_size(std::uint64_t m, std::size_t dimension) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < dimension; ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / m) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    size *= m;
  }
  return size;
}

EigenReport enumerate_directions(const ModMatrix& matrix, std::uint64_t budget, unsigned threads) {
  const std::uint64_t m = matrix.m();
  const std::uint64_t total = enumeration_size(m, matrix.dimension());
  if (total > budget) {
    throw BudgetError("enumeration needs " + std::to_string(total) +
                      " candidate vectors but the budget is " + std::to_string(budget) +
                      "; use the kernel method");
  }
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  const std::uint64_t chunks = std::min<std::uint64_t>(threads, total);

  Enumerator enumerator(matrix);
  std::vector<ChunkTally> tallies(chunks, ChunkTally(m));
  auto bounds = [&](std::uint64_t c) { return total / chunks * c + std::min(c, total % chunks); };
  if (chunks == 1) {
    enumerator.scan(0, total, tallies[0]);
  } else {
    std::vector<std::thread> workers;
    for (std::uint64_t c = 0; c < chunks; ++c) {
      workers.emplace_back([&, c] { enumerator.scan(bounds(c), bounds(c + 1), tallies[c]); });
    }
    for (auto& t : workers) t.join();
  }

  ChunkTally sum(m);
  for (const auto& t : tallies) {
    for (std::uint64_t l = 0; l < m; ++l) {
      sum.solutions[l] += t.solutions[l];
      sum.primitive[l] += t.primitive[l];
      sum.directions[l] += t.directions[l];
    }
    sum.scanned += t.scanned;
    sum.orbits += t.orbits;
    sum.violations += t.violations;
  }

  EigenReport report;
  report.m = m;
  report.method = OracleMethod::Enumerate;
  report.vectors_scanned = sum.scanned;
  report.orbits_checked = sum.orbits;
  report.orbit_size_violations = sum.violations;
  for (Residue lambda = 0; lambda < m; ++lambda) {
    if (sum.primitive[lambda] == 0) continue;
    report.per_eigenvalue.push_back(
        {lambda, BigInt(sum.primitive[lambda]), exact_log(sum.solutions[lambda], m)});
    report.direction_count += sum.directions[lambda];
    if (!is_one_mod_some_prime(lambda, matrix.modulus())) {
      report.strict_direction_count += sum.directions[lambda];
    }
  }
  return report;
}

EigenReport enumerate_deck_directions(int g, std::int64_t m, int n, std::uint64_t budget,
                                      unsigned threads) {
  if (g < 2 || n < 2) throw DomainError("g and n must be >= 2");
  EigenReport report = enumerate_directions(ModMatrix(deck_matrix(g, n), factorize(m)), budget, threads);
  report.g = g;
  report.n = n;
  return report;
}

KernelResult solve_kernel(const ModMatrix& a) {
  if (!a.modulus().is_prime_power()) {
    throw DomainError("solve_kernel works over Z/p^eZ only");
  }
  const std::uint64_t p = a.modulus().factors()[0].p;
  const std::uint64_t q = a.m();
  const std::size_t k = a.dimension();
  std::vector<std::vector<Residue>> rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i].assign(a.entries().begin() + i * k, a.entries().begin() + (i + 1) * k);

  std::vector<std::size_t> pivot_cols;
  std::vector<std::size_t> free_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t r = rank;
    while (r < k && rows[r][c] % p == 0) ++r;
    if (r == k) {
      free_cols.push_back(c);
      continue;
    }
    std::swap(rows[rank], rows[r]);
    auto& pivot = rows[rank];
    const Residue inv = inverse_mod(pivot[c], q);
    for (auto& x : pivot) x = mul_mod(x, inv, q);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      const Residue factor = rows[i][c];
      for (std::size_t j = 0; j < k; ++j) {
        if (pivot[j] != 0) rows[i][j] = sub_mod(rows[i][j], mul_mod(factor, pivot[j], q), q);
      }
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  // Rows below the pivots only hold non-units; a nonzero one means the kernel
  // has torsion and is not free.
  for (std::size_t i = rank; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (rows[i][j] != 0) {
        throw IntegrityError("kernel over Z/" + std::to_string(q) +
                             " is not free: residual entry " + std::to_string(rows[i][j]) +
                             " has positive p-valuation but is nonzero");
      }
    }
  }
  KernelResult result;
  result.rank = static_cast<int>(free_cols.size());
  for (std::size_t f : free_cols) {
    std::vector<Residue> x(k, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < rank; ++i) x[pivot_cols[i]] = rows[i][f] == 0 ? 0 : q - rows[i][f];
    const auto image = a.apply(x);
    if (std::any_of(image.begin(), image.end(), [](Residue y) { return y != 0; })) {
      throw IntegrityError("kernel basis vector fails A v = 0");
    }
    result.basis.push_back(std::move(x));
  }
  return result;
}

EigenReport kernel_directions(int g, std::int64_t m, int n) {
  validate_cover_parameters(g, m, n);
  const FactoredModulus fm = factorize(m);
  const IntMatrix deck = deck_matrix(g, n);

  struct Local {
    std::uint64_t modulus;
    std::vector<Residue> lambdas;
    std::vector<BigInt> counts;
  };
  std::vector<Local> locals;
  EigenReport report;
  report.g = g;
  report.m = fm.value();
  report.n = n;
  report.method = OracleMethod::Kernel;

  for (const auto& f : fm.factors()) {
    const FactoredModulus local = FactoredModulus::from_factors({f});
    const ModMatrix sigma(deck, local);
    const int fixed_rank = solve_kernel(sigma.minus_scalar(1)).rank;
    if (fixed_rank != 2 * g) {
      throw IntegrityError("fixed space mod " + std::to_string(local.value()) + " has rank " +
                           std::to_string(fixed_rank) + ", expected " + std::to_string(2 * g));
    }
    report.fixed_space_ranks.push_back(fixed_rank);
    Local entry{local.value(), {}, {}};
    for (Residue lambda : eigenvalue_set(n, f.p, f.e)) {
      const KernelResult kernel = solve_kernel(sigma.minus_scalar(lambda));
      if (kernel.rank != 2 * g - 2) {
        throw IntegrityError("eigenspace of " + std::to_string(lambda) + " mod " +
                             std::to_string(local.value()) + " has rank " +
                             std::to_string(kernel.rank) + ", expected " +
                             std::to_string(2 * g - 2));
      }
      entry.lambdas.push_back(lambda);
      entry.counts.push_back(count_primitive_vectors(kernel.rank, local));
    }
    locals.push_back(std::move(entry));
  }

  // Eigenvalue choices are independent per prime; walk the product.
  BigInt total = 0;
  const bool empty = std::any_of(locals.begin(), locals.end(),
                                 [](const Local& l) { return l.lambdas.empty(); });
  if (!empty) {
    std::vector<std::size_t> choice(locals.size(), 0);
    std::vector<std::uint64_t> moduli;
    for (const auto& l : locals) moduli.push_back(l.modulus);
    while (true) {
      std::vector<Residue> residues;
      BigInt count = 1;
      for (std::size_t i = 0; i < locals.size(); ++i) {
        residues.push_back(locals[i].lambdas[choice[i]]);
        count *= locals[i].counts[choice[i]];
      }
      report.per_eigenvalue.push_back({crt_combine(residues, moduli), count, 2 * g - 2});
      total += count;
      std::size_t i = 0;
      for (; i < locals.size(); ++i) {
        if (++choice[i] < locals[i].lambdas.size()) break;
        choice[i] = 0;
      }
      if (i == locals.size()) break;
    }
  }
  std::sort(report.per_eigenvalue.begin(), report.per_eigenvalue.end(),
            [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
  const std::uint64_t phi = euler_phi(fm);
  if (total % phi != 0) {
    throw IntegrityError("primitive eigenvector count is not divisible by phi(m)");
  }
  report.direction_count = total / phi;
  report.strict_direction_count = report.direction_count;
  return report;
}

std::string VerifyVerdict::method() const {
  return enumeration ? "formula+kernel+enumeration" : "kernel-verified";
}

VerifyVerdict verify(int g, std::int64_t m, int n, const VerifyOptions& options) {
  validate_cover_parameters(g, m, n);
  VerifyVerdict verdict;
  verdict.g = g;
  verdict.m = static_cast<std::uint64_t>(m);
  verdict.n = n;
  verdict.formula = count_T(g, m, n);
  verdict.kernel = kernel_directions(g, m, n).direction_count;
  verdict.required_candidates =
      enumeration_size(static_cast<std::uint64_t>(m), static_cast<std::size_t>(deck_dimension(g, n)));
  if (verdict.required_candidates <= options.budget) {
    IntMatrix deck = deck_matrix(g, n);
    if (options.enumeration_matrix_hook) options.enumeration_matrix_hook(deck);
    EigenReport enumerated =
        enumerate_directions(ModMatrix(deck, factorize(m)), options.budget, options.threads);
    verdict.enumeration = enumerated.direction_count;
    verdict.enumeration_strict = enumerated.strict_direction_count;
    verdict.orbit_size_violations = enumerated.orbit_size_violations;
  }
  verdict.match = verdict.formula == verdict.kernel &&
                  (!verdict.enumeration || *verdict.enumeration == verdict.formula);
  return verdict;
}

}  // namespace etale
