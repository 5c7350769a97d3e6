#include "nmcode/outcome.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nmcode {

std::string Outcome::str() const {
    switch (tag) {
    case Tag::Bot: return "bot";
    case Tag::SameStar: return "same*";
    default: return "msg:" + std::to_string(msg);
    }
}

std::string OutcomeDistribution::bytes() const {
    std::ostringstream os;
    os << (mode == Mode::Exact ? "exact" : "empirical") << " total=" << total;
    for (const auto& [o, c] : counts) os << " " << o.str() << "=" << c;
    return os.str();
}

OutcomeDistribution patch(const OutcomeDistribution& d, uint64_t m) {
    OutcomeDistribution out;
    out.mode = d.mode;
    out.total = d.total;
    for (const auto& [o, c] : d.counts)
        out.counts[o.tag == Outcome::Tag::SameStar ? Outcome::message(m) : o] += c;
    return out;
}

Rational statistical_distance(const OutcomeDistribution& p, const OutcomeDistribution& q,
                              bool allow_mode_mix) {
    if (p.mode != q.mode && !allow_mode_mix)
        throw std::invalid_argument(
            "statistical_distance: mixing exact and empirical modes (pass allow_mode_mix)");
    if (p.total == 0 || q.total == 0)
        throw std::invalid_argument("statistical_distance: empty distribution");
    using u128 = unsigned __int128;
    u128 l1 = 0;
    for (const auto& [o, c] : p.counts) {
        auto it = q.counts.find(o);
        u128 lhs = u128(c) * q.total;
        u128 rhs = it == q.counts.end() ? 0 : u128(it->second) * p.total;
        l1 += lhs > rhs ? lhs - rhs : rhs - lhs;
    }
    for (const auto& [o, c] : q.counts)
        if (p.counts.find(o) == p.counts.end()) l1 += u128(c) * p.total;
    u128 den = u128(2) * p.total * q.total;
    // reduce to fit 64-bit; both sides share gcd
    u128 g = l1;
    u128 b = den;
    while (b) {
        u128 t = g % b;
        g = b;
        b = t;
    }
    if (g == 0) return Rational::zero();
    l1 /= g;
    den /= g;
    if (l1 > UINT64_MAX || den > UINT64_MAX)
        throw std::overflow_error("statistical_distance: counts too large");
    return Rational(static_cast<uint64_t>(l1), static_cast<uint64_t>(den));
}

double sd_half_width(const OutcomeDistribution& p) {
    if (p.mode == OutcomeDistribution::Mode::Exact || p.total == 0) return 0.0;
    double acc = 0.0;
    const double n = static_cast<double>(p.total);
    for (const auto& [o, c] : p.counts) {
        double ph = static_cast<double>(c) / n;
        acc += 3.0 * std::sqrt(ph * (1.0 - ph) / n);
    }
    return acc / 2.0;
}

} // namespace nmcode
