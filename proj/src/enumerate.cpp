#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "extremal/errors.hpp"
#include "extremal/reinhardt.hpp"

// A signature (c_1..c_m) of n is encoded as the +-1 word e_0..e_{n-1} that is
// constant on blocks of lengths c_i with alternating signs. Summation by parts
// turns star closure into sum_j e_j z^j = 0 with z = exp(i pi / n), the form
// both enumeration routes search for.

namespace extremal::reinhardt {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

using CanonicalSet = std::unordered_set<std::vector<int>, VectorHash>;

std::vector<int> distinct_primes(int q) {
  std::vector<int> ps;
  for (int p = 2; p * p <= q; ++p) {
    if (q % p == 0) {
      ps.push_back(p);
      while (q % p == 0) q /= p;
    }
  }
  if (q > 1) ps.push_back(q);
  return ps;
}

long long mod_inverse(long long a, long long m) {
  long long old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const long long quot = old_r / r;
    old_r -= quot * r;
    std::swap(old_r, r);
    old_s -= quot * s;
    std::swap(old_s, s);
  }
  return ((old_s % m) + m) % m;
}

bool pow_exceeds(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) return true;
    v *= base;
  }
  return v > cap;
}

void insert_canonical(CanonicalSet& out, std::span<const int> signs) {
  out.insert(canonical_form(composition_from_signs(signs).parts()));
}

std::vector<EnumeratedClass> finish(int n, const CanonicalSet& found, ValidityMode mode) {
  std::vector<std::vector<int>> words(found.begin(), found.end());
  std::sort(words.begin(), words.end());
  std::vector<EnumeratedClass> out;
  out.reserve(words.size());
  for (auto& w : words) {
    Composition c(n, std::move(w));
    if (!is_valid(c, mode)) {
      throw std::logic_error("enumeration produced non-closing signature (" + to_string(c) + ")");
    }
    SymmetryClass s = classify(c);
    out.push_back({std::move(c), std::move(s)});
  }
  return out;
}

std::vector<EnumeratedClass> enumerate_exact(int n, const EnumerationLimits& limits) {
  const int a = std::countr_zero(static_cast<unsigned>(n));
  const int q = n >> a;
  // With q = 1 each residue class holds a single root of unity; no class
  // sum can vanish.
  if (q == 1) return {};

  const auto subsets = vanishing_subsets(q, limits.max_candidates);
  const std::size_t classes = std::size_t{1} << a;
  if (pow_exceeds(subsets.size(), classes, limits.max_candidates)) {
    throw CapExceeded("enumeration of n = " + std::to_string(n) + " needs " + std::to_string(subsets.size()) + "^" +
                      std::to_string(classes) + " candidates, above the limit of " +
                      std::to_string(limits.max_candidates));
  }

  // z = alpha^u beta^v with alpha a primitive 2^(a+1)-th and beta a primitive
  // q-th root of unity. {alpha^t : t < 2^a} is a basis over Q(beta), so the
  // total vanishes iff every residue-class sum vanishes.
  const long long two = 1LL << (a + 1);
  const long long u = mod_inverse(q % two, two);
  const long long v = mod_inverse(two % q, q);
  std::vector<std::size_t> cls(static_cast<std::size_t>(n));
  std::vector<int> sgn(static_cast<std::size_t>(n));
  std::vector<std::size_t> pos(static_cast<std::size_t>(n));
  for (long long j = 0; j < n; ++j) {
    const long long e = (j * u) % two;
    const long long half = two / 2;
    cls[static_cast<std::size_t>(j)] = static_cast<std::size_t>(e % half);
    sgn[static_cast<std::size_t>(j)] = e >= half ? -1 : 1;
    pos[static_cast<std::size_t>(j)] = static_cast<std::size_t>((j * v) % q);
  }

  CanonicalSet found;
  std::vector<std::size_t> pick(classes, 0);
  std::vector<int> signs(static_cast<std::size_t>(n));
  for (;;) {
    for (std::size_t j = 0; j < signs.size(); ++j) {
      const bool in = subsets[pick[cls[j]]][pos[j]];
      signs[j] = sgn[j] * (in ? 1 : -1);
    }
    if (signs.front() == signs.back()) {
      if (signs.front() < 0) {
        for (auto& s : signs) s = -s;
      }
      insert_canonical(found, signs);
    }
    std::size_t k = 0;
    while (k < classes && ++pick[k] == subsets.size()) pick[k++] = 0;
    if (k == classes) break;
  }
  return finish(n, found, ValidityMode::exact());
}

constexpr int kNumericMaxN = 44;

std::vector<EnumeratedClass> enumerate_numeric(int n, double tol, const EnumerationLimits& limits) {
  if (n > kNumericMaxN) {
    throw CapExceeded("numeric enumeration is limited to n <= " + std::to_string(kNumericMaxN));
  }
  // e_0 = e_{n-1} = +1 fixes the global sign and the odd part count.
  const int free = n - 2;
  const int left = free / 2;
  const int right = free - left;
  if (pow_exceeds(2, static_cast<std::uint64_t>(right), limits.max_candidates)) {
    throw CapExceeded("numeric enumeration of n = " + std::to_string(n) + " exceeds the candidate limit");
  }
  std::vector<double> zx(static_cast<std::size_t>(n));
  std::vector<double> zy(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    zx[static_cast<std::size_t>(j)] = std::cos(std::numbers::pi * j / n);
    zy[static_cast<std::size_t>(j)] = std::sin(std::numbers::pi * j / n);
  }
  auto half_sum = [&](std::uint32_t mask, int first, int count, double& x, double& y) {
    for (int b = 0; b < count; ++b) {
      const double s = (mask >> b) & 1U ? 1.0 : -1.0;
      x += s * zx[static_cast<std::size_t>(first + b)];
      y += s * zy[static_cast<std::size_t>(first + b)];
    }
  };

  const double cell = std::max(1e-6, 4.0 * tol);
  auto key = [cell](double x, double y, long long dx, long long dy) {
    const long long ix = static_cast<long long>(std::floor(x / cell)) + dx;
    const long long iy = static_cast<long long>(std::floor(y / cell)) + dy;
    return static_cast<std::uint64_t>(ix) * 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(iy);
  };

  const std::uint32_t left_count = 1U << left;
  std::vector<double> lx(left_count);
  std::vector<double> ly(left_count);
  std::unordered_multimap<std::uint64_t, std::uint32_t> buckets;
  buckets.reserve(left_count);
  for (std::uint32_t mask = 0; mask < left_count; ++mask) {
    double x = zx[0] + zx[static_cast<std::size_t>(n - 1)];
    double y = zy[0] + zy[static_cast<std::size_t>(n - 1)];
    half_sum(mask, 1, left, x, y);
    lx[mask] = x;
    ly[mask] = y;
    buckets.emplace(key(x, y, 0, 0), mask);
  }

  CanonicalSet found;
  std::vector<int> signs(static_cast<std::size_t>(n), 1);
  std::unordered_set<std::uint32_t> seen;
  for (std::uint32_t mask = 0; mask < (1U << right); ++mask) {
    double x = 0.0;
    double y = 0.0;
    half_sum(mask, 1 + left, right, x, y);
    seen.clear();
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto [lo, hi] = buckets.equal_range(key(-x, -y, dx, dy));
        for (auto it = lo; it != hi; ++it) {
          const std::uint32_t lm = it->second;
          if (std::hypot(lx[lm] + x, ly[lm] + y) >= tol || !seen.insert(lm).second) continue;
          for (int b = 0; b < left; ++b) signs[static_cast<std::size_t>(1 + b)] = (lm >> b) & 1U ? 1 : -1;
          for (int b = 0; b < right; ++b) {
            signs[static_cast<std::size_t>(1 + left + b)] = (mask >> b) & 1U ? 1 : -1;
          }
          insert_canonical(found, signs);
        }
      }
    }
  }
  return finish(n, found, ValidityMode::numeric(tol));
}

}  // namespace

std::vector<std::vector<bool>> vanishing_subsets(int q, std::uint64_t max_count) {
  if (q < 3 || q % 2 == 0) throw InvalidArgument("vanishing_subsets expects odd q >= 3");
  const auto primes = distinct_primes(q);
  if (primes.size() > 2) {
    throw CapExceeded("odd part " + std::to_string(q) + " has more than two distinct prime factors");
  }
  auto coset = [q](int p, int r) {
    std::vector<int> out;
    for (int k = 0; k < p; ++k) out.push_back(r + k * (q / p));
    return out;
  };

  std::set<std::vector<bool>> result;
  const int p = primes[0];
  const int cp = q / p;
  if (pow_exceeds(2, static_cast<std::uint64_t>(cp), max_count)) {
    throw CapExceeded("too many vanishing subsets of Z_" + std::to_string(q));
  }
  std::uint64_t produced = 0;
  for (std::uint64_t xm = 0; xm < (std::uint64_t{1} << cp); ++xm) {
    std::vector<bool> base(static_cast<std::size_t>(q), false);
    for (int r = 0; r < cp; ++r) {
      if ((xm >> r) & 1U) {
        for (int s : coset(p, r)) base[static_cast<std::size_t>(s)] = true;
      }
    }
    if (primes.size() == 1) {
      result.insert(std::move(base));
      continue;
    }
    const int r2 = primes[1];
    std::vector<int> allowed;
    for (int r = 0; r < q / r2; ++r) {
      const auto c = coset(r2, r);
      if (std::none_of(c.begin(), c.end(), [&](int s) { return base[static_cast<std::size_t>(s)]; })) {
        allowed.push_back(r);
      }
    }
    if (pow_exceeds(2, allowed.size(), max_count)) throw CapExceeded("too many vanishing subsets");
    for (std::uint64_t ym = 0; ym < (std::uint64_t{1} << allowed.size()); ++ym) {
      if (++produced > max_count) throw CapExceeded("too many vanishing subsets");
      std::vector<bool> set = base;
      for (std::size_t i = 0; i < allowed.size(); ++i) {
        if ((ym >> i) & 1U) {
          for (int s : coset(r2, allowed[i])) set[static_cast<std::size_t>(s)] = true;
        }
      }
      result.insert(std::move(set));
    }
  }
  return {result.begin(), result.end()};
}

std::vector<EnumeratedClass> enumerate(int n, ValidityMode mode, EnumerationLimits limits) {
  if (n < 3) throw InvalidArgument("enumerate needs n >= 3");
  if (n > limits.max_n) {
    throw CapExceeded("n = " + std::to_string(n) + " exceeds the enumeration cap of " + std::to_string(limits.max_n));
  }
  if (mode.kind == ValidityMode::Kind::Numeric) return enumerate_numeric(n, mode.tol, limits);
  return enumerate_exact(n, limits);
}

}  // namespace extremal::reinhardt
