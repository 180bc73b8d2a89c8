#pragma once

#include <span>
#include <vector>

#include "hyperlip/poly.hpp"

namespace hyperlip::detail {

// Recentred coefficients together with a running bound on the rounding error
// committed by the shift. noise[j] bounds |error in reduced.coeff(j)|.
struct RecentredWithNoise {
  TschirnForm form;
  std::vector<double> noise;  // index j = 0..n, noise[0] = noise[1] = 0
};

// `magnitudes[j - 1]`, when given, replaces |a_j| as the scale of the rounding
// already present in a_j (for coefficients that were themselves computed).
RecentredWithNoise recentre_with_noise(const MonicPoly& p, std::span<const double> magnitudes = {});

// Descending coefficients (leading first) of p(Z + h) by repeated synthetic
// division.
std::vector<double> taylor_shift_descending(std::vector<double> desc, double h);

}  // namespace hyperlip::detail
