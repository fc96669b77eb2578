#pragma once

#include <cstdint>
#include <string>

namespace esec {

/// Touching/non-touching plus the general object states.
/// U: object does not exist yet, X: destroyed, A: absent after having been there.
enum class Tn : std::uint8_t { T, N, U, X, A };

/// Static spatial relations. R/L/F/Ba are normally composed into Ar and the
/// X/A values only appear as table-level overrides, never from the geometric
/// classifier. Bw is ternary and reported through a diagnostic query only.
enum class Ssr : std::uint8_t { Ab, Be, R, L, F, Ba, Ar, To, Bo, ArT, In, Sa, Bw, O, U, X, A };

/// Dynamic spatial relations over a frame window. X/A are overrides as above.
enum class Dsr : std::uint8_t { MT, HT, FMT, GC, MA, S, Q, U, X, A };

std::string to_symbol(Tn v);
std::string to_symbol(Ssr v);
std::string to_symbol(Dsr v);

Tn tn_from_symbol(const std::string& s);
Ssr ssr_from_symbol(const std::string& s);
Dsr dsr_from_symbol(const std::string& s);

} // namespace esec
