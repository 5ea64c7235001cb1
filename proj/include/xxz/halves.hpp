#ifndef XXZ_HALVES_HPP
#define XXZ_HALVES_HPP

#include <cstdlib>
#include <string>
#include <vector>

namespace xxz {

// Quantum numbers are integers or half-integers. They are stored exactly as
// doubled values ("halves"): n = w/2 with w even for integers and w odd for
// half-integers. All set manipulations stay in integer arithmetic.
using Half = int;

inline double half_value(Half w) { return 0.5 * static_cast<double>(w); }

inline bool half_is_integer(Half w) { return (w % 2) == 0; }

// "3/2", "-2", "0.5", "-1.5" -> doubled value; throws std::invalid_argument.
Half parse_half(const std::string& s);

std::string half_to_string(Half w);

// Parity of a number set: integers for M odd, half-integers for M even
// (L even). Returns the required w-parity bit (0 even, 1 odd).
inline int required_parity(int M) { return (M % 2 == 0) ? 1 : 0; }

// The L consecutive allowed values of the given parity on (-L/2, L/2],
// in doubled units: integers {-L+2, ..., L}, half-integers {-L+1, ..., L-1}.
std::vector<Half> brillouin_window(int L, int parity_bit);

}  // namespace xxz

#endif
