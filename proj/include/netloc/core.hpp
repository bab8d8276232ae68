// SPDX-License-Identifier: MIT
// Exact rational scalar type and the error hierarchy shared by every module.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netloc {

using Rational = mpq_class;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// All failures raised by the library derive from Error so callers can catch
// one type.  ParseError is kept apart because the CLI maps it to its own exit
// status.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : Error {
    using Error::Error;
};
struct InvalidNetwork : Error {
    using Error::Error;
};
struct InvalidPoint : Error {
    using Error::Error;
};
struct InvalidArgument : Error {
    using Error::Error;
};
struct NormalizationRequired : Error {
    using Error::Error;
};
struct BelowThreshold : Error {
    using Error::Error;
};
struct VertexPropertyViolated : Error {
    using Error::Error;
};
// Raised when an internal cross-check fails.  Seeing one means a bug.
struct InternalConsistency : Error {
    using Error::Error;
};

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
        auto b = t.find_first_not_of(" \t");
        auto e = t.find_last_not_of(" \t");
        t = b == std::string::npos ? std::string{} : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw ParseError("empty rational literal");
    if (s.front() == '+') s.erase(0, 1);
    auto slash = s.find('/');
    auto digits_ok = [](std::string_view d, bool allow_sign) {
        if (allow_sign && !d.empty() && d.front() == '-') d.remove_prefix(1);
        if (d.empty()) return false;
        for (char c : d)
            if (c < '0' || c > '9') return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!digits_ok(s, true)) throw ParseError("malformed rational: '" + s + "'");
    } else {
        std::string_view num(s.data(), slash);
        std::string_view den(s.data() + slash + 1, s.size() - slash - 1);
        if (!digits_ok(num, true) || !digits_ok(den, false))
            throw ParseError("malformed rational: '" + s + "'");
        if (den.find_first_not_of('0') == std::string_view::npos)
            throw ParseError("zero denominator in '" + s + "'");
    }
    Rational q(s, 10);
    q.canonicalize();
    return q;
}

// Canonical a/b.  mpq_class(a, b) alone does not reduce the fraction.
inline Rational ratio(long a, long b) {
    if (b == 0) throw std::domain_error("zero denominator");
    Rational q(a, b);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline mpz_class ceil_q(const Rational& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline mpz_class floor_q(const Rational& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace netloc
