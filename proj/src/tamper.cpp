#include "nmcode/tamper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nmcode {

namespace {

const char* kActionNames[4] = {"set0", "set1", "keep", "flip"};

uint64_t pow_u64(uint64_t b, uint64_t e) {
    uint64_t acc = 1;
    while (e--) acc *= b;
    return acc;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void check_index_set(const std::vector<uint32_t>& s, size_t n, const char* what) {
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= n) throw std::invalid_argument(std::string(what) + ": index out of range");
        if (i && s[i] <= s[i - 1])
            throw std::invalid_argument(std::string(what) + ": indices must be sorted and distinct");
    }
}

} // namespace

void validate(const TamperFunction& f) {
    if (f.n == 0 || f.n > 64) throw std::invalid_argument("TamperFunction: n must be 1..64");
    check_index_set(f.s_read, f.n, "s_read");
    check_index_set(f.s_write, f.n, "s_write");
    if (f.read_bits() > 20)
        throw std::invalid_argument("TamperFunction: explicit tables limited to |s_read| <= 20");
    if (f.table.size() != (1ull << f.read_bits()))
        throw std::invalid_argument("TamperFunction: table must cover all read values");
    for (const auto& row : f.table)
        if (row.size() != f.s_write.size())
            throw std::invalid_argument("TamperFunction: action vector length mismatch");
}

uint64_t read_value(const TamperFunction& f, uint64_t x) {
    uint64_t alpha = 0;
    for (size_t j = 0; j < f.s_read.size(); ++j) alpha |= ((x >> f.s_read[j]) & 1) << j;
    return alpha;
}

uint64_t tamper_apply(const TamperFunction& f, uint64_t x) {
    const auto& actions = f.table[read_value(f, x)];
    uint64_t out = x;
    for (size_t j = 0; j < f.s_write.size(); ++j) {
        const uint64_t bit = 1ull << f.s_write[j];
        switch (actions[j]) {
        case BitAction::Set0: out &= ~bit; break;
        case BitAction::Set1: out |= bit; break;
        case BitAction::Keep: break;
        case BitAction::Flip: out ^= bit; break;
        }
    }
    return out;
}

std::vector<BitAction> action_vector(const TamperFunction& f, uint64_t alpha) {
    std::vector<BitAction> out(f.n, BitAction::Keep);
    const auto& actions = f.table[alpha];
    for (size_t j = 0; j < f.s_write.size(); ++j) out[f.s_write[j]] = actions[j];
    return out;
}

BitAction difference_action(BitAction a) {
    switch (a) {
    case BitAction::Set0: return BitAction::Keep;
    case BitAction::Set1: return BitAction::Flip;
    case BitAction::Keep: return BitAction::Set0;
    case BitAction::Flip: return BitAction::Set1;
    }
    throw std::logic_error("difference_action: bad action");
}

std::vector<BitAction> difference_function(const TamperFunction& f, uint64_t alpha) {
    if (alpha >= f.table.size()) throw std::invalid_argument("difference_function: alpha out of domain");
    std::vector<BitAction> out = action_vector(f, alpha);
    for (auto& a : out) a = difference_action(a);
    return out;
}

TamperFunction tamper_sample_sizes(size_t n, size_t read_size, size_t write_size, SampleMode mode,
                                   uint64_t seed) {
    Rng rng = Rng(seed).child(0x74616d70); // "tamp"
    TamperFunction f;
    f.n = n;
    f.s_read = rng.subset(static_cast<uint32_t>(n), static_cast<uint32_t>(read_size));
    f.s_write = rng.subset(static_cast<uint32_t>(n), static_cast<uint32_t>(write_size));
    const uint64_t rows = 1ull << read_size;
    f.table.resize(rows);
    if (mode == SampleMode::Uniform) {
        for (auto& row : f.table) {
            row.resize(write_size);
            for (auto& a : row) a = static_cast<BitAction>(rng.below(4));
        }
    } else {
        // named strategies, chosen per function (not per row)
        const uint64_t strat = rng.below(5);
        for (uint64_t alpha = 0; alpha < rows; ++alpha) {
            auto& row = f.table[alpha];
            row.resize(write_size);
            switch (strat) {
            case 0: std::fill(row.begin(), row.end(), BitAction::Set0); break;
            case 1: std::fill(row.begin(), row.end(), BitAction::Set1); break;
            case 2: std::fill(row.begin(), row.end(), BitAction::Flip); break;
            case 3: // copy read bits cyclically onto the write set
                for (size_t j = 0; j < write_size; ++j)
                    row[j] = read_size == 0 ? BitAction::Keep
                             : ((alpha >> (j % read_size)) & 1) ? BitAction::Set1
                                                                : BitAction::Set0;
                break;
            default: { // majority threshold on the read value
                size_t ones = static_cast<size_t>(__builtin_popcountll(alpha));
                std::fill(row.begin(), row.end(),
                          2 * ones >= read_size ? BitAction::Flip : BitAction::Keep);
            }
            }
        }
    }
    validate(f);
    return f;
}

TamperFunction tamper_sample(size_t n, double rho_r, double rho_w, SampleMode mode, uint64_t seed) {
    return tamper_sample_sizes(n, static_cast<size_t>(rho_r * n), static_cast<size_t>(rho_w * n),
                               mode, seed);
}

long double family_size_bound_log2(size_t n, double rho_r, double rho_w) {
    const double nr_d = rho_r * static_cast<double>(n);
    const double nw_d = rho_w * static_cast<double>(n);
    const auto nr = static_cast<uint64_t>(std::llround(nr_d));
    const auto nw = static_cast<uint64_t>(std::llround(nw_d));
    if (std::abs(nr_d - static_cast<double>(nr)) > 1e-9 ||
        std::abs(nw_d - static_cast<double>(nw)) > 1e-9)
        throw std::invalid_argument("family_size_bound_log2: n*rho must be integral");
    auto log2_binom = [](uint64_t nn, uint64_t kk) {
        long double acc = 0;
        for (uint64_t i = 0; i < kk; ++i)
            acc += std::log2(static_cast<long double>(nn - i)) -
                   std::log2(static_cast<long double>(i + 1));
        return acc;
    };
    // log2[(4^nw)^(2^nr)] = 2^nr * 2 nw, exact in extended precision
    long double tables = std::exp2l(static_cast<long double>(nr)) * 2.0L *
                         static_cast<long double>(nw);
    return log2_binom(n, nr) + log2_binom(n, nw) + tables;
}

TamperFunction privacy_breaker(const std::vector<uint64_t>& distinguisher_set,
                               const std::vector<uint32_t>& s_read, size_t n) {
    TamperFunction f;
    f.n = n;
    f.s_read = s_read;
    f.s_write = {0};
    const uint64_t rows = 1ull << s_read.size();
    std::vector<bool> keep(rows, false);
    for (uint64_t a : distinguisher_set) {
        if (a >= rows) throw std::invalid_argument("privacy_breaker: read value out of domain");
        keep[a] = true;
    }
    f.table.resize(rows);
    for (uint64_t a = 0; a < rows; ++a)
        f.table[a] = {keep[a] ? BitAction::Keep : BitAction::Flip};
    validate(f);
    return f;
}

std::string tamper_to_text(const TamperFunction& f) {
    std::ostringstream os;
    os << "tamper n=" << f.n << "\nread";
    for (uint32_t i : f.s_read) os << " " << i;
    os << "\nwrite";
    for (uint32_t i : f.s_write) os << " " << i;
    os << "\n";
    for (uint64_t a = 0; a < f.table.size(); ++a) {
        os << a << ":";
        for (BitAction act : f.table[a]) os << " " << kActionNames[static_cast<int>(act)];
        os << "\n";
    }
    return os.str();
}

TamperFunction tamper_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    TamperFunction f;
    is >> tok;
    if (tok != "tamper") throw std::invalid_argument("tamper_from_text: bad header");
    is >> tok;
    if (tok.rfind("n=", 0) != 0) throw std::invalid_argument("tamper_from_text: missing n");
    f.n = std::stoul(tok.substr(2));
    is >> tok; // "read"
    std::string line;
    std::getline(is, line);
    {
        std::istringstream ls(line);
        uint32_t v;
        while (ls >> v) f.s_read.push_back(v);
    }
    is >> tok; // "write"
    std::getline(is, line);
    {
        std::istringstream ls(line);
        uint32_t v;
        while (ls >> v) f.s_write.push_back(v);
    }
    const uint64_t rows = 1ull << f.s_read.size();
    f.table.resize(rows);
    for (uint64_t a = 0; a < rows; ++a) {
        is >> tok; // "<alpha>:"
        auto& row = f.table[a];
        row.resize(f.s_write.size());
        for (auto& act : row) {
            is >> tok;
            bool found = false;
            for (int i = 0; i < 4; ++i)
                if (tok == kActionNames[i]) {
                    act = static_cast<BitAction>(i);
                    found = true;
                }
            if (!found) throw std::invalid_argument("tamper_from_text: bad action " + tok);
        }
    }
    validate(f);
    return f;
}

uint64_t tamper_digest(const TamperFunction& f) { return fnv1a(tamper_to_text(f)); }

// ---- q-ary ----

void validate(const AoTamperFunction& f) {
    if (f.n == 0) throw std::invalid_argument("AoTamperFunction: empty");
    check_index_set(f.s_read, f.n, "s_read");
    const uint64_t rows = pow_u64(f.field.q(), f.s_read.size());
    if (rows > (1ull << 20)) throw std::invalid_argument("AoTamperFunction: read domain too large");
    if (f.table.size() != rows)
        throw std::invalid_argument("AoTamperFunction: table must cover the read domain");
    for (const auto& row : f.table) {
        if (row.size() != f.n) throw std::invalid_argument("AoTamperFunction: action vector length");
        for (const auto& a : row)
            if (a.value > f.field.mask())
                throw std::invalid_argument("AoTamperFunction: action value outside field");
    }
}

uint64_t ao_read_value(const AoTamperFunction& f, const FieldVector& x) {
    uint64_t alpha = 0;
    for (size_t j = f.s_read.size(); j-- > 0;) alpha = alpha * f.field.q() + x[f.s_read[j]];
    return alpha;
}

FieldVector ao_apply(const AoTamperFunction& f, const FieldVector& x) {
    if (x.size() != f.n) throw std::invalid_argument("ao_apply: wrong length");
    const auto& actions = f.table[ao_read_value(f, x)];
    FieldVector out = x;
    for (size_t i = 0; i < f.n; ++i) {
        if (actions[i].kind == QaryAction::Kind::Add)
            out[i] = gf_add(f.field, x[i], actions[i].value);
        else
            out[i] = actions[i].value;
    }
    return out;
}

AoTamperFunction ao_sample(const FieldSpec& field, size_t n, size_t read_size, SampleMode mode,
                           uint64_t seed) {
    Rng rng = Rng(seed).child(0x616f); // "ao"
    AoTamperFunction f;
    f.field = field;
    f.n = n;
    f.s_read = rng.subset(static_cast<uint32_t>(n), static_cast<uint32_t>(read_size));
    const uint64_t rows = pow_u64(field.q(), read_size);
    f.table.resize(rows);
    const uint64_t strat = mode == SampleMode::Structured ? rng.below(3) : 0;
    for (auto& row : f.table) {
        row.resize(n);
        for (auto& a : row) {
            if (mode == SampleMode::Uniform) {
                a.kind = rng.coin() ? QaryAction::Kind::Add : QaryAction::Kind::Overwrite;
                a.value = static_cast<uint32_t>(rng.below(field.q()));
            } else {
                switch (strat) {
                case 0: a = {QaryAction::Kind::Add, 0}; break;
                case 1: a = {QaryAction::Kind::Overwrite,
                             static_cast<uint32_t>(rng.below(field.q()))}; break;
                default: a = {QaryAction::Kind::Add,
                              static_cast<uint32_t>(rng.below(field.q()))}; break;
                }
            }
        }
    }
    validate(f);
    return f;
}

std::string ao_to_text(const AoTamperFunction& f) {
    std::ostringstream os;
    os << "ao w=" << f.field.w << " n=" << f.n << "\nread";
    for (uint32_t i : f.s_read) os << " " << i;
    os << "\n";
    for (uint64_t a = 0; a < f.table.size(); ++a) {
        os << a << ":";
        for (const auto& act : f.table[a])
            os << " " << (act.kind == QaryAction::Kind::Add ? "add" : "ow") << act.value;
        os << "\n";
    }
    return os.str();
}

uint64_t ao_digest(const AoTamperFunction& f) { return fnv1a(ao_to_text(f)); }

TamperFunction ao_to_bit(const AoTamperFunction& f) {
    if (f.field.w != 1) throw std::invalid_argument("ao_to_bit: needs q=2");
    TamperFunction g;
    g.n = f.n;
    g.s_read = f.s_read;
    g.s_write.resize(f.n);
    for (size_t i = 0; i < f.n; ++i) g.s_write[i] = static_cast<uint32_t>(i);
    g.table.resize(f.table.size());
    for (uint64_t a = 0; a < f.table.size(); ++a) {
        g.table[a].resize(f.n);
        for (size_t i = 0; i < f.n; ++i) {
            const auto& act = f.table[a][i];
            if (act.kind == QaryAction::Kind::Add)
                g.table[a][i] = act.value ? BitAction::Flip : BitAction::Keep;
            else
                g.table[a][i] = act.value ? BitAction::Set1 : BitAction::Set0;
        }
    }
    validate(g);
    return g;
}

} // namespace nmcode
