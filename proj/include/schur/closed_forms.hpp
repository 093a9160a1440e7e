#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace schur {

struct ClosedForm {
  std::string tag;
  double value;
};

/// Curated exact values that occur as Schur norms, extremal norms and
/// maximal entrywise 1-norms of orthogonal matrices in small dimensions.
inline const std::vector<ClosedForm>& closed_forms() {
  static const std::vector<ClosedForm> forms = [] {
    const auto sq = [](double x) { return std::sqrt(x); };
    std::vector<ClosedForm> f = {
        {"5/3", 5.0 / 3.0},
        {"sqrt(2+sqrt(2))", sq(2 + sq(2))},
        {"(2+3*sqrt(6))/5", (2 + 3 * sq(6)) / 5},
        {"(1+4*sqrt(5))/5", (1 + 4 * sq(5)) / 5},
        {"(3+8*sqrt(2))/7", (3 + 8 * sq(2)) / 7},
        {"11/5", 11.0 / 5.0},
        {"(4+sqrt(10))/3", (4 + sq(10)) / 3},
        {"(1+12*sqrt(2))/7", (1 + 12 * sq(2)) / 7},
        {"7/3", 7.0 / 3.0},
        {"1+sqrt(3)", 1 + sq(3)},
        {"(3+2*sqrt(5)+2*sqrt(7+2*sqrt(11)))/5", (3 + 2 * sq(5) + 2 * sq(7 + 2 * sq(11))) / 5},
        {"11*sqrt(2)/5", 11 * sq(2) / 5},
        {"(1+20*sqrt(3))/11", (1 + 20 * sq(3)) / 11},
        {"2+sqrt(2)", 2 + sq(2)},
        {"(5+24*sqrt(3))/13", (5 + 24 * sq(3)) / 13},
        {"(17+6*sqrt(2))/7", (17 + 6 * sq(2)) / 7},
        {"22/5", 22.0 / 5.0},
        {"(21+4*sqrt(7))/7", (21 + 4 * sq(7)) / 7},
        {"(1+44*sqrt(6))/23", (1 + 44 * sq(6)) / 23},
        {"(32+sqrt(34))/9", (32 + sq(34)) / 9},
        {"8+2*sqrt(10)", 8 + 2 * sq(10)},
        {"1+12*sqrt(2)", 1 + 12 * sq(2)},
        {"22*sqrt(2)", 22 * sq(2)},
        {"5+24*sqrt(3)", 5 + 24 * sq(3)},
        {"60+sqrt(89)", 60 + sq(89)},
        {"64+2*sqrt(34)", 64 + 2 * sq(34)},
    };
    // integers and surds last so the specific forms win
    for (int k = 1; k <= 64; ++k) f.push_back({std::to_string(k), static_cast<double>(k)});
    for (int k = 2; k <= 48; ++k)
      for (int m : {2, 3, 5, 6, 7, 10}) f.push_back({std::to_string(k) + "*sqrt(" + std::to_string(m) + ")", k * sq(m)});
    for (int k = 2; k <= 32; ++k) {
      const int r = static_cast<int>(std::lround(std::sqrt(k)));
      if (r * r != k) f.push_back({"sqrt(" + std::to_string(k) + ")", sq(k)});
    }
    return f;
  }();
  return forms;
}

/// Tag of the first curated closed form within tol of x, if any.
inline std::optional<std::string> match_closed_form(double x, double tol = 1e-7) {
  for (const auto& f : closed_forms())
    if (std::abs(f.value - x) <= tol) return f.tag;
  return std::nullopt;
}

}  // namespace schur
