#include "longres/basis.hpp"

#include <algorithm>
#include <set>

#include "longres/errors.hpp"

namespace longres {

namespace {

void enumerate(int vars, int remaining, int k, const std::vector<int>& caps,
               std::vector<int>& current, std::vector<Monomial>& out) {
  if (k == vars) {
    if (remaining == 0) out.emplace_back(current);
    return;
  }
  int cap = caps[static_cast<size_t>(k)];
  int hi = cap < 0 ? remaining : std::min(cap, remaining);
  for (int e = 0; e <= hi; ++e) {
    current[static_cast<size_t>(k)] = e;
    enumerate(vars, remaining - e, k + 1, caps, current, out);
  }
  current[static_cast<size_t>(k)] = 0;
}

}  // namespace

MonomialBasis MonomialBasis::all_of_degree(int vars, int degree,
                                           std::vector<int> caps) {
  if (degree < 0) throw BadDegree("negative basis degree");
  if (caps.empty()) caps.assign(static_cast<size_t>(vars), -1);
  if (static_cast<int>(caps.size()) != vars)
    throw SizeMismatch("cap vector length differs from variable count");
  std::vector<Monomial> ms;
  std::vector<int> current(static_cast<size_t>(vars), 0);
  enumerate(vars, degree, 0, caps, current, ms);
  std::sort(ms.begin(), ms.end());
  return MonomialBasis(vars, degree, std::move(caps), std::move(ms));
}

MonomialBasis MonomialBasis::multiaffine(int vars, int degree) {
  return all_of_degree(vars, degree, std::vector<int>(static_cast<size_t>(vars), 1));
}

MonomialBasis MonomialBasis::from_monomials(std::vector<Monomial> monomials,
                                            std::vector<int> caps) {
  if (monomials.empty()) throw BadInput("empty monomial basis");
  int vars = monomials.front().vars();
  int degree = monomials.front().degree();
  if (caps.empty()) caps.assign(static_cast<size_t>(vars), -1);
  std::sort(monomials.begin(), monomials.end());
  std::set<Monomial> seen;
  for (const auto& m : monomials) {
    if (m.vars() != vars || m.degree() != degree)
      throw BadInput("basis monomials must share degree and variable space");
    for (int k = 0; k < vars; ++k) {
      int cap = caps[static_cast<size_t>(k)];
      if (cap >= 0 && m.exponent(k) > cap)
        throw BadInput("basis monomial exceeds a per-variable cap");
    }
    if (!seen.insert(m).second)
      throw BadInput("basis monomials must be pairwise distinct");
  }
  return MonomialBasis(vars, degree, std::move(caps), std::move(monomials));
}

std::optional<int> MonomialBasis::index_of(const Monomial& m) const {
  auto it = std::lower_bound(monomials_.begin(), monomials_.end(), m);
  if (it == monomials_.end() || *it != m) return std::nullopt;
  return static_cast<int>(it - monomials_.begin());
}

bool MonomialBasis::all_multiaffine() const {
  return std::all_of(monomials_.begin(), monomials_.end(),
                     [](const Monomial& m) { return m.multiaffine(); });
}

MonomialBasis MonomialBasis::restricted(int k, int bound) const {
  std::vector<Monomial> ms;
  for (const auto& m : monomials_)
    if (m.exponent(k) <= bound) ms.push_back(m);
  std::vector<int> caps = caps_;
  caps[static_cast<size_t>(k)] =
      caps[static_cast<size_t>(k)] < 0 ? bound
                                       : std::min(caps[static_cast<size_t>(k)], bound);
  return MonomialBasis(d_, degree_, std::move(caps), std::move(ms));
}

}  // namespace longres
