#include "iif/rat.hpp"

#include "iif/error.hpp"

namespace iif {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::JetLimitExceeded: return "JetLimitExceeded";
        case ErrorKind::LeadingCoefficientZero: return "LeadingCoefficientZero";
        case ErrorKind::ZeroBase: return "ZeroBase";
        case ErrorKind::NotInvariant: return "NotInvariant";
        case ErrorKind::NonSplittingDenominator: return "NonSplittingDenominator";
        case ErrorKind::ZeroBDivisor: return "ZeroBDivisor";
        case ErrorKind::SingularAtOrigin: return "SingularAtOrigin";
        case ErrorKind::DomainViolation: return "DomainViolation";
        case ErrorKind::BlowUp: return "BlowUp";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::NonCoprime: return "NonCoprime";
        case ErrorKind::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

Rat parse_rat(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rat r(text, 10);
        r.canonicalize();
        return r;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, text.size() - dot - 1);
    Rat r{Int(digits, 10), scale};
    r.canonicalize();
    return r;
}

Rat factorial(unsigned n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(f);
}

Rat binomial(unsigned n, unsigned k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rat(b);
}

}  // namespace iif
