#include "eppe/oracles.hpp"

#include "eppe/errors.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

namespace eppe {

std::vector<Integer> pascal_row(unsigned n)
{
    std::vector<Integer> row{1};
    for (unsigned i = 1; i <= n; ++i) {
        std::vector<Integer> next(i + 1);
        next[0] = 1;
        next[i] = 1;
        for (unsigned k = 1; k < i; ++k)
            next[k] = row[k - 1] + row[k];
        row = std::move(next);
    }
    return row;
}

Integer binomial(unsigned n, unsigned s)
{
    if (s > n)
        return 0;
    return pascal_row(n)[s];
}

Integer partial_binom(const Integer& x, unsigned n, unsigned s)
{
    if (s > n)
        throw InvalidArgument("partial_binom needs s <= n");
    auto row = pascal_row(n);
    Integer acc = 0;
    Integer xp = 1;
    for (unsigned i = 0; i + s <= n; ++i) {
        acc += row[s + i] * xp;
        xp *= x;
    }
    return acc;
}

// --- PH^2 ---------------------------------------------------------------

namespace {

struct Pairs {
    unsigned n;
    std::vector<std::vector<unsigned>> index;
    unsigned count = 0;

    explicit Pairs(unsigned size) : n(size), index(size, std::vector<unsigned>(size, 0))
    {
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = a + 1; b < n; ++b)
                index[a][b] = index[b][a] = count++;
    }
};

std::uint64_t checked_colorings(unsigned r, unsigned pairs, const Ph2Options& opts)
{
    std::uint64_t total = 1;
    for (unsigned i = 0; i < pairs; ++i) {
        if (total > opts.max_colorings / (r ? r : 1))
            throw BudgetExceeded("coloring count exceeds the configured limit");
        total *= r;
    }
    if (total > opts.max_colorings)
        throw BudgetExceeded("coloring count exceeds the configured limit");
    return total;
}

} // namespace

bool ph2_homogeneous(const std::vector<std::vector<unsigned>>& coloring, unsigned k)
{
    const unsigned n = static_cast<unsigned>(coloring.size());
    if (n > 31)
        throw BudgetExceeded("ground set too large for subset enumeration");
    for (std::uint32_t set = 1; set < (std::uint32_t{1} << n); ++set) {
        unsigned size = static_cast<unsigned>(__builtin_popcount(set));
        unsigned least = static_cast<unsigned>(__builtin_ctz(set));
        if (size + 1 < least + k) // need size >= least + k - 1
            continue;
        bool homogeneous = true;
        long seen = -1;
        for (unsigned a = 0; a < n && homogeneous; ++a) {
            if (!(set >> a & 1u))
                continue;
            for (unsigned b = a + 1; b < n; ++b) {
                if (!(set >> b & 1u))
                    continue;
                long col = coloring[a][b];
                if (seen == -1)
                    seen = col;
                else if (seen != col) {
                    homogeneous = false;
                    break;
                }
            }
        }
        if (homogeneous)
            return true;
    }
    return false;
}

bool ph2_check(unsigned k, unsigned r, unsigned M, const Ph2Options& opts)
{
    if (r < 1)
        throw InvalidArgument("ph2_check needs r >= 1");
    const unsigned n = M + 1;
    Pairs pairs(n);
    const std::uint64_t total = checked_colorings(r, pairs.count, opts);
    std::vector<unsigned> color(pairs.count, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (unsigned p = 0; p < pairs.count; ++p) {
            color[p] = static_cast<unsigned>(c % r);
            c /= r;
        }
        std::vector<std::vector<unsigned>> matrix(n, std::vector<unsigned>(n, 0));
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = a + 1; b < n; ++b)
                matrix[a][b] = matrix[b][a] = color[pairs.index[a][b]];
        bool found = ph2_homogeneous(matrix, k);
        if (!found)
            return false;
    }
    return true;
}

bool ph2_check_clique(unsigned k, unsigned r, unsigned M, const Ph2Options& opts)
{
    if (r < 1)
        throw InvalidArgument("ph2_check needs r >= 1");
    const unsigned n = M + 1;
    Pairs pairs(n);
    checked_colorings(r, pairs.count, opts);
    std::vector<unsigned> color(pairs.count, 0);

    // Largest clique in colour c extending `members` with vertices > last.
    std::function<unsigned(unsigned, std::vector<unsigned>&)> grow =
        [&](unsigned c, std::vector<unsigned>& members) -> unsigned {
        unsigned best = static_cast<unsigned>(members.size());
        for (unsigned v = members.back() + 1; v < n; ++v) {
            bool ok = true;
            for (unsigned u : members)
                if (color[pairs.index[u][v]] != c) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            members.push_back(v);
            best = std::max(best, grow(c, members));
            members.pop_back();
        }
        return best;
    };

    auto good = [&]() {
        for (unsigned a = 0; a < n; ++a) {
            if (a + k <= 2) // {a} alone is large enough
                return true;
            for (unsigned c = 0; c < r; ++c) {
                std::vector<unsigned> members{a};
                if (grow(c, members) + 1 >= a + k)
                    return true;
            }
        }
        return false;
    };

    // Odometer enumeration of colorings.
    while (true) {
        if (!good())
            return false;
        unsigned p = 0;
        while (p < pairs.count && color[p] == r - 1)
            color[p++] = 0;
        if (p == pairs.count)
            break;
        ++color[p];
    }
    return true;
}

namespace {

// Backtracking search for a coloring of {0..M} with no large homogeneous set.
class BadColoringSearch {
public:
    BadColoringSearch(unsigned k, unsigned r, unsigned M, std::uint64_t max_nodes)
        : k_(k), r_(r), M_(M), max_nodes_(max_nodes), col_(M + 1, std::vector<unsigned>(M + 1, 0))
    {
    }

    std::optional<std::vector<std::vector<unsigned>>> run()
    {
        if (closes(0))
            return std::nullopt;
        if (assign(1, 0))
            return col_;
        return std::nullopt;
    }

private:
    // Clique in colour c with least element mem[0], extendable to top vertex b.
    bool extend(std::vector<unsigned>& mem, unsigned c, unsigned need, unsigned b)
    {
        if (mem.size() + 1 >= need)
            return true;
        for (unsigned v = mem.back() + 1; v < b; ++v) {
            if (col_[v][b] != c)
                continue;
            bool ok = true;
            for (unsigned u : mem)
                if (col_[u][v] != c) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            mem.push_back(v);
            if (extend(mem, c, need, b))
                return true;
            mem.pop_back();
        }
        return false;
    }

    // Some large homogeneous set has largest element b.
    bool closes(unsigned b)
    {
        if (b + k_ <= 2)
            return true;
        for (unsigned a = 0; a < b; ++a) {
            unsigned need = a + k_ - 1;
            if (need <= 2)
                return true;
            std::vector<unsigned> mem{a};
            if (extend(mem, col_[a][b], need, b))
                return true;
        }
        return false;
    }

    bool assign(unsigned b, unsigned a)
    {
        if (++nodes_ > max_nodes_)
            throw BudgetExceeded("coloring search exceeds the configured node limit");
        if (b > M_)
            return true;
        if (a == b)
            return !closes(b) && assign(b + 1, 0);
        for (unsigned c = 0; c < r_; ++c) {
            col_[a][b] = col_[b][a] = c;
            if (assign(b, a + 1))
                return true;
        }
        return false;
    }

    unsigned k_, r_, M_;
    std::uint64_t max_nodes_;
    std::uint64_t nodes_ = 0;
    std::vector<std::vector<unsigned>> col_;
};

} // namespace

std::optional<std::vector<std::vector<unsigned>>> ph2_bad_coloring(unsigned k, unsigned r, unsigned M,
                                                                   const Ph2Options& opts)
{
    if (r < 1)
        throw InvalidArgument("ph2 search needs r >= 1");
    return BadColoringSearch(k, r, M, opts.max_search_nodes).run();
}

long ph2_min_M(unsigned k, unsigned r, unsigned max_M, const Ph2Options& opts)
{
    for (unsigned M = 0; M <= max_M; ++M)
        if (!ph2_bad_coloring(k, r, M, opts))
            return static_cast<long>(M);
    return -1;
}

// --- hereditary notation ------------------------------------------------

HereditaryTree to_hereditary(const Integer& n, const Integer& base)
{
    if (base < 2)
        throw InvalidArgument("hereditary notation needs base >= 2");
    if (n < 0)
        throw InvalidArgument("hereditary notation needs n >= 0");
    HereditaryTree t;
    std::vector<std::pair<Integer, Integer>> digits; // (coefficient, exponent)
    Integer rest = n;
    Integer e = 0;
    while (rest > 0) {
        Integer d = rest % base;
        if (d != 0)
            digits.emplace_back(d, e);
        rest /= base;
        ++e;
    }
    for (auto it = digits.rbegin(); it != digits.rend(); ++it)
        t.terms.emplace_back(it->first, to_hereditary(it->second, base));
    return t;
}

Integer eval_tree(const HereditaryTree& t, const Integer& base, const EvalLimits& limits)
{
    Integer acc = 0;
    for (const auto& [c, e] : t.terms) {
        Integer ex = eval_tree(e, base, limits);
        acc += c * eval_term(pow(Term(base), Term(ex)), {}, limits);
    }
    return acc;
}

std::string to_string(const HereditaryTree& t, const Integer& base)
{
    if (t.empty())
        return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < t.terms.size(); ++i) {
        const auto& [c, e] = t.terms[i];
        if (i)
            os << " + ";
        if (e.empty()) {
            os << c.get_str();
            continue;
        }
        if (c != 1)
            os << c.get_str() << '*';
        os << base.get_str() << "^(" << to_string(e, base) << ')';
    }
    return os.str();
}

Integer goodstein_step(const Integer& m, const Integer& base, const EvalLimits& limits)
{
    if (m < 1)
        throw InvalidArgument("goodstein_step needs m >= 1");
    return eval_tree(to_hereditary(m, base), base + 1, limits) - 1;
}

namespace {

// Value of n with every occurrence of base b in its hereditary form bumped to c.
Integer bump(const Integer& n, const Integer& b, const Integer& c, const EvalLimits& limits)
{
    Integer out = 0;
    Integer rest = n;
    Integer e = 0;
    while (rest > 0) {
        Integer d = rest % b;
        if (d != 0) {
            Integer ex = bump(e, b, c, limits);
            out += d * eval_term(pow(Term(c), Term(ex)), {}, limits);
        }
        rest /= b;
        ++e;
    }
    return out;
}

} // namespace

Integer goodstein_step_direct(const Integer& m, const Integer& base, const EvalLimits& limits)
{
    if (m < 1)
        throw InvalidArgument("goodstein_step needs m >= 1");
    return bump(m, base, base + 1, limits) - 1;
}

GoodsteinRun goodstein_seq(const Integer& m, const Integer& a, std::size_t cap, const EvalLimits& limits)
{
    GoodsteinRun run;
    run.values.push_back(m);
    Integer cur = m;
    Integer base = a;
    for (std::size_t i = 0; i < cap && cur != 0; ++i) {
        cur = goodstein_step(cur, base, limits);
        base += 1;
        run.values.push_back(cur);
    }
    run.terminated = cur == 0;
    return run;
}

Integer digit(const Integer& n, const Integer& base, unsigned long j)
{
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), j);
    return (n / p) % base;
}

unsigned long highest_power(const Integer& n, const Integer& base)
{
    if (n < 1)
        throw InvalidArgument("highest_power needs n >= 1");
    unsigned long l = 0;
    Integer p = base;
    while (p <= n) {
        p *= base;
        ++l;
    }
    return l;
}

// --- sequence coding -------------------------------------------------------

Integer godel_element(const Integer& b, const Integer& d, unsigned long k)
{
    Integer mod = 1 + Integer(k + 1) * d;
    Integer r = b % mod;
    if (r < 0)
        r += mod;
    return r;
}

namespace {

// x = r_i (mod m_i) for pairwise coprime m_i; least nonnegative solution.
Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli)
{
    Integer x = 0;
    Integer mod = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        Integer inv;
        if (mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), moduli[i].get_mpz_t()) == 0 && moduli[i] != 1)
            throw Error("moduli are not coprime");
        Integer t = ((residues[i] - x) % moduli[i]) * inv % moduli[i];
        if (t < 0)
            t += moduli[i];
        x += mod * t;
        mod *= moduli[i];
    }
    return x;
}

bool pairwise_coprime(const std::vector<Integer>& m)
{
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (gcd(m[i], m[j]) != 1)
                return false;
    return true;
}

} // namespace

std::pair<Integer, Integer> godel_encode(const std::vector<Integer>& seq)
{
    Integer top = 0;
    for (const auto& v : seq) {
        if (v < 0)
            throw InvalidArgument("sequence entries are natural numbers");
        top = std::max(top, v);
    }
    // least d whose moduli 1 + (k+1) d exceed every entry and are pairwise coprime
    for (Integer d = 1;; ++d) {
        std::vector<Integer> mods;
        for (std::size_t k = 0; k < seq.size(); ++k)
            mods.push_back(1 + Integer(k + 1) * d);
        if (!mods.empty() && mods.front() <= top)
            continue;
        if (!pairwise_coprime(mods))
            continue;
        return {crt(seq, mods), d};
    }
}

std::pair<Integer, Integer> encode_coloring(const std::vector<std::vector<unsigned>>& coloring)
{
    const std::size_t n = coloring.size();
    unsigned top = 0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            top = std::max(top, coloring[x][y]);
    for (Integer b = 1;; ++b) {
        std::vector<Integer> mods, res;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y) {
                mods.push_back(b * Integer(x + y * y) + 1);
                res.push_back(coloring[x][y]);
            }
        if (!mods.empty() && *std::min_element(mods.begin(), mods.end()) <= top)
            continue;
        if (!pairwise_coprime(mods))
            continue;
        return {crt(res, mods), b};
    }
}

} // namespace eppe
