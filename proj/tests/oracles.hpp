#pragma once

#include <optional>

#include "ezdkit/module.hpp"

namespace ezdkit::testing {

// Brute-force oracle: enumerate every element of End(M) and look for a
// nontrivial idempotent.  Only for fields with |k|^dim End within budget.
inline std::optional<bool> brute_has_nontrivial_idempotent(const PresentedModule& M,
                                                           std::uint64_t budget = 1000000) {
  const FieldPtr F = M.algebra()->field();
  if (!F->finite()) return std::nullopt;
  HomSpace E = hom_space(M, M);
  double pts = 1;
  for (int i = 0; i < E.dim(); ++i) {
    pts *= (double)F->order();
    if (pts > (double)budget) return std::nullopt;
  }
  const int n = M.length();
  Mat id = Mat::identity(F, n);
  std::vector<std::uint64_t> idx(E.dim(), 0);
  auto advance = [&]() {
    for (auto& i : idx) {
      if (++i < F->order()) return true;
      i = 0;
    }
    return false;
  };
  while (advance()) {
    Mat phi(F, n, n);
    for (int k = 0; k < E.dim(); ++k) {
      if (idx[k] == 0) continue;
      FElem c = F->element_at(idx[k]);
      for (size_t s = 0; s < phi.a.size(); ++s)
        phi.a[s] = F->add(phi.a[s], F->mul(c, E.basis[k].a[s]));
    }
    if (phi.is_zero() || phi == id) continue;
    if (phi.mul(phi) == phi) return true;
  }
  return false;
}

} // namespace ezdkit::testing
