#include "xxz/halves.hpp"

#include <cmath>
#include <stdexcept>

namespace xxz {

Half parse_half(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty quantum number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    int num = std::stoi(s.substr(0, slash));
    int den = std::stoi(s.substr(slash + 1));
    if (den == 2) return num;
    if (den == 1) return 2 * num;
    throw std::invalid_argument("quantum number denominator must be 1 or 2: " + s);
  }
  double v = std::stod(s);
  double w = 2.0 * v;
  double r = std::round(w);
  if (std::abs(w - r) > 1e-9)
    throw std::invalid_argument("not an integer or half-integer: " + s);
  return static_cast<Half>(r);
}

std::string half_to_string(Half w) {
  if (w % 2 == 0) return std::to_string(w / 2);
  return std::to_string(w) + "/2";
}

std::vector<Half> brillouin_window(int L, int parity_bit) {
  std::vector<Half> win;
  win.reserve(L);
  int start = (parity_bit == 0) ? (-L + 2) : (-L + 1);
  for (int w = start; w <= L; w += 2) win.push_back(w);
  return win;
}

}  // namespace xxz
