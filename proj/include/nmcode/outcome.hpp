#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "nmcode/rational.hpp"

namespace nmcode {

// Tampering-experiment outcome: a decoded message, decoding failure, or the
// simulator sentinel for "codeword unchanged".
struct Outcome {
    enum class Tag : uint8_t { Bot = 0, SameStar = 1, Message = 2 } tag = Tag::Bot;
    uint64_t msg = 0; // valid iff tag == Message

    static Outcome bot() { return {Tag::Bot, 0}; }
    static Outcome same_star() { return {Tag::SameStar, 0}; }
    static Outcome message(uint64_t m) { return {Tag::Message, m}; }

    friend bool operator<(const Outcome& a, const Outcome& b) {
        if (a.tag != b.tag) return a.tag < b.tag;
        return a.msg < b.msg;
    }
    friend bool operator==(const Outcome& a, const Outcome& b) {
        return a.tag == b.tag && (a.tag != Tag::Message || a.msg == b.msg);
    }
    std::string str() const;
};

// Probability mass over outcomes as exact integer counts out of `total`
// (exact mode enumerates a declared randomness space; empirical mode counts
// Monte Carlo trials, total == sample count).
struct OutcomeDistribution {
    enum class Mode : uint8_t { Exact, Empirical } mode = Mode::Exact;
    std::map<Outcome, uint64_t> counts;
    uint64_t total = 0;

    void add(const Outcome& o, uint64_t c = 1) {
        counts[o] += c;
        total += c;
    }
    Rational prob(const Outcome& o) const {
        auto it = counts.find(o);
        return it == counts.end() ? Rational::zero() : Rational(it->second, total);
    }
    // Canonical byte serialization; used for the message-independence check.
    std::string bytes() const;
};

// same* mass reassigned to the real message; everything else unchanged.
OutcomeDistribution patch(const OutcomeDistribution& d, uint64_t m);

// Half the L1 distance, exact. Mixing exact and empirical distributions is an
// error unless allow_mode_mix is set.
Rational statistical_distance(const OutcomeDistribution& p, const OutcomeDistribution& q,
                              bool allow_mode_mix = false);

// Conservative binomial half-width for an empirical distribution: half the
// sum of per-outcome 3-sigma deviations. Zero in exact mode.
double sd_half_width(const OutcomeDistribution& p);

} // namespace nmcode
