#include "extremal/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "extremal/errors.hpp"

namespace extremal::cyclotomic {

namespace {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Long division by a monic polynomial; a is overwritten by the remainder.
Poly divide(Poly& a, const Poly& monic) {
  if (monic.empty() || monic.back() != 1) throw InvalidArgument("divisor must be monic");
  trim(a);
  const std::size_t db = monic.size() - 1;
  if (a.size() <= db) return {};
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const std::int64_t c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (std::size_t k = 0; k <= db; ++k) a[i - db + k] -= c * monic[k];
  }
  trim(a);
  return q;
}

}  // namespace

Poly remainder(Poly a, const Poly& monic) {
  divide(a, monic);
  return a;
}

Poly exact_quotient(Poly a, const Poly& monic) {
  Poly q = divide(a, monic);
  if (!a.empty()) throw std::logic_error("polynomial division left a remainder");
  return q;
}

const Poly& cyclotomic_polynomial(int order) {
  if (order < 1) throw InvalidArgument("cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<int, Poly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(order); it != cache.end()) return it->second;
  }
  Poly p(static_cast<std::size_t>(order) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(order)] = 1;
  for (int d = 1; d < order; ++d) {
    if (order % d == 0) p = exact_quotient(std::move(p), cyclotomic_polynomial(d));
  }
  std::lock_guard lock(mutex);
  return cache.emplace(order, std::move(p)).first->second;
}

bool vanishes_at_primitive_root(const Poly& p, int order) {
  return remainder(p, cyclotomic_polynomial(order)).empty();
}

}  // namespace extremal::cyclotomic
