#include "esec/relations.hpp"

#include <stdexcept>

namespace esec {

// Spellings exactly as in the table legend.
std::string to_symbol(Tn v) {
    switch (v) {
        case Tn::T: return "T";
        case Tn::N: return "N";
        case Tn::U: return "U";
        case Tn::X: return "X";
        case Tn::A: return "A";
    }
    throw std::logic_error("bad Tn value");
}

std::string to_symbol(Ssr v) {
    switch (v) {
        case Ssr::Ab: return "Ab";
        case Ssr::Be: return "Be";
        case Ssr::R: return "R";
        case Ssr::L: return "L";
        case Ssr::F: return "F";
        case Ssr::Ba: return "Ba";
        case Ssr::Ar: return "Ar";
        case Ssr::To: return "To";
        case Ssr::Bo: return "Bo";
        case Ssr::ArT: return "ArT";
        case Ssr::In: return "In";
        case Ssr::Sa: return "Sa";
        case Ssr::Bw: return "Bw";
        case Ssr::O: return "O";
        case Ssr::U: return "U";
        case Ssr::X: return "X";
        case Ssr::A: return "A";
    }
    throw std::logic_error("bad Ssr value");
}

std::string to_symbol(Dsr v) {
    switch (v) {
        case Dsr::MT: return "MT";
        case Dsr::HT: return "HT";
        case Dsr::FMT: return "FMT";
        case Dsr::GC: return "GC";
        case Dsr::MA: return "MA";
        case Dsr::S: return "S";
        case Dsr::Q: return "Q";
        case Dsr::U: return "U";
        case Dsr::X: return "X";
        case Dsr::A: return "A";
    }
    throw std::logic_error("bad Dsr value");
}

Tn tn_from_symbol(const std::string& s) {
    if (s == "T") return Tn::T;
    if (s == "N") return Tn::N;
    if (s == "U") return Tn::U;
    if (s == "X") return Tn::X;
    if (s == "A") return Tn::A;
    throw std::invalid_argument("unknown T/N symbol: " + s);
}

Ssr ssr_from_symbol(const std::string& s) {
    if (s == "Ab") return Ssr::Ab;
    if (s == "Be") return Ssr::Be;
    if (s == "R") return Ssr::R;
    if (s == "L") return Ssr::L;
    if (s == "F") return Ssr::F;
    if (s == "Ba") return Ssr::Ba;
    if (s == "Ar") return Ssr::Ar;
    if (s == "To") return Ssr::To;
    if (s == "Bo") return Ssr::Bo;
    if (s == "ArT") return Ssr::ArT;
    if (s == "In") return Ssr::In;
    if (s == "Sa") return Ssr::Sa;
    if (s == "Bw") return Ssr::Bw;
    if (s == "O") return Ssr::O;
    if (s == "U") return Ssr::U;
    if (s == "X") return Ssr::X;
    if (s == "A") return Ssr::A;
    throw std::invalid_argument("unknown SSR symbol: " + s);
}

Dsr dsr_from_symbol(const std::string& s) {
    if (s == "MT") return Dsr::MT;
    if (s == "HT") return Dsr::HT;
    if (s == "FMT") return Dsr::FMT;
    if (s == "GC") return Dsr::GC;
    if (s == "MA") return Dsr::MA;
    if (s == "S") return Dsr::S;
    if (s == "Q") return Dsr::Q;
    if (s == "U") return Dsr::U;
    if (s == "X") return Dsr::X;
    if (s == "A") return Dsr::A;
    throw std::invalid_argument("unknown DSR symbol: " + s);
}

} // namespace esec
