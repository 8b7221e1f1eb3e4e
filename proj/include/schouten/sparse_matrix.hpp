#pragma once

// Exact sparse matrices over Q, rank by fraction-free sparse elimination (with a modular
// lower bound), and null spaces.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schouten/rational.hpp"

namespace schouten {

/// Sparse rational matrix stored column by column; each column is sorted by row and holds
/// no explicit zeros.
class SparseMatrixQ {
public:
    using Column = std::vector<std::pair<std::size_t, Rational>>;

    SparseMatrixQ() = default;
    SparseMatrixQ(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    static SparseMatrixQ identity(std::size_t n)
    {
        SparseMatrixQ m(n, n);
        for (std::size_t k = 0; k < n; ++k)
            m.columns_[k].emplace_back(k, Rational(1));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }

    std::size_t nonzeros() const
    {
        std::size_t nnz = 0;
        for (const auto& c : columns_)
            nnz += c.size();
        return nnz;
    }

    const Column& column(std::size_t c) const { return columns_.at(c); }

    /// Replaces column c; entries may be unsorted and contain zeros or repeats.
    void set_column(std::size_t c, Column entries)
    {
        if (c >= cols())
            throw std::out_of_range("column index out of range");
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        Column merged;
        for (auto& [r, v] : entries) {
            if (r >= rows_)
                throw std::out_of_range("row index out of range");
            if (!merged.empty() && merged.back().first == r)
                merged.back().second += v;
            else
                merged.emplace_back(r, std::move(v));
        }
        std::erase_if(merged, [](const auto& e) { return e.second == 0; });
        columns_[c] = std::move(merged);
    }

    Rational entry(std::size_t r, std::size_t c) const
    {
        const auto& col = columns_.at(c);
        auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t row) { return e.first < row; });
        return (it != col.end() && it->first == r) ? it->second : Rational(0);
    }

    SparseMatrixQ transposed() const
    {
        SparseMatrixQ t(cols(), rows_);
        for (std::size_t c = 0; c < cols(); ++c)
            for (const auto& [r, v] : columns_[c])
                t.columns_[r].emplace_back(c, v);
        return t;
    }

    /// Reorders rows and columns: entry (r, c) moves to (row_perm[r], col_perm[c]).
    SparseMatrixQ permuted(const std::vector<std::size_t>& row_perm, const std::vector<std::size_t>& col_perm) const
    {
        SparseMatrixQ out(rows_, cols());
        for (std::size_t c = 0; c < cols(); ++c) {
            Column moved;
            for (const auto& [r, v] : columns_[c])
                moved.emplace_back(row_perm.at(r), v);
            out.set_column(col_perm.at(c), std::move(moved));
        }
        return out;
    }

    friend SparseMatrixQ operator*(const SparseMatrixQ& a, const SparseMatrixQ& b)
    {
        if (a.cols() != b.rows_)
            throw std::invalid_argument("matrix product with mismatched shapes");
        SparseMatrixQ out(a.rows_, b.cols());
        for (std::size_t c = 0; c < b.cols(); ++c) {
            Column acc;
            for (const auto& [k, v] : b.columns_[c])
                for (const auto& [r, u] : a.columns_[k])
                    acc.emplace_back(r, u * v);
            out.set_column(c, std::move(acc));
        }
        return out;
    }

    std::vector<Rational> apply(const std::vector<Rational>& x) const
    {
        if (x.size() != cols())
            throw std::invalid_argument("vector length differs from column count");
        std::vector<Rational> y(rows_);
        for (std::size_t c = 0; c < cols(); ++c)
            if (x[c] != 0)
                for (const auto& [r, v] : columns_[c])
                    y[r] += v * x[c];
        return y;
    }

    bool is_zero() const { return nonzeros() == 0; }

    friend bool operator==(const SparseMatrixQ&, const SparseMatrixQ&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<Column> columns_;
};

/// Coordinate-list export: header `rows cols nnz`, then `row col p/q` sorted by (col, row),
/// 0-based indices.
inline std::string to_coordinate_text(const SparseMatrixQ& m)
{
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonzeros() << '\n';
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            out << r << ' ' << c << ' ' << to_text(v) << '\n';
    return out.str();
}

namespace detail {

using IntRow = std::vector<std::pair<std::uint32_t, BigInt>>;

inline void remove_content(IntRow& row)
{
    if (row.empty())
        return;
    BigInt g = 0;
    for (const auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1)
            return;
    }
    if (row.front().second < 0)
        g = -g;
    for (auto& [c, v] : row)
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

/// Rows of m as primitive integer vectors (denominators cleared, content removed).
inline std::vector<IntRow> integer_rows(const SparseMatrixQ& m)
{
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> rat(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            rat[r].emplace_back(static_cast<std::uint32_t>(c), v);
    std::vector<IntRow> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BigInt l = 1;
        for (const auto& [c, v] : rat[r])
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        out[r].reserve(rat[r].size());
        for (const auto& [c, v] : rat[r])
            out[r].emplace_back(c, BigInt(v.get_num() * (l / v.get_den())));
        remove_content(out[r]);
    }
    return out;
}

}  // namespace detail

namespace detail {

/// Integer rows, updated as r <- p*r - a*pivot and then made primitive.
struct IntegerElimination {
    using Value = BigInt;
    static bool is_unit(const Value& v) { return abs(v) == 1; }
    Value combine(const Value& p, const Value& x, const Value& a, const Value& y) const { return p * x - a * y; }
    Value scale(const Value& p, const Value& x) const { return p * x; }
    Value negate_scale(const Value& a, const Value& y) const { return -a * y; }
    static bool is_zero(const Value& v) { return v == 0; }
    static void finish(std::vector<std::pair<std::uint32_t, Value>>& row) { remove_content(row); }
};

/// Rows reduced modulo a prime below 2^62; the same update, no content to remove.
struct ModularElimination {
    using Value = std::uint64_t;
    std::uint64_t prime;
    static bool is_unit(const Value&) { return true; }
    Value mul(Value x, Value y) const { return static_cast<Value>(static_cast<unsigned __int128>(x) * y % prime); }
    Value combine(const Value& p, const Value& x, const Value& a, const Value& y) const
    {
        const Value u = mul(p, x), v = mul(a, y);
        return u >= v ? u - v : u + (prime - v);
    }
    Value scale(const Value& p, const Value& x) const { return mul(p, x); }
    Value negate_scale(const Value& a, const Value& y) const
    {
        const Value v = mul(a, y);
        return v == 0 ? 0 : prime - v;
    }
    static bool is_zero(const Value& v) { return v == 0; }
    static void finish(std::vector<std::pair<std::uint32_t, Value>>&) {}
};

/// Sparse elimination shared by the exact and modular rank. Each step pivots on the
/// sparsest live column, using its shortest row (unit entries preferred). Deterministic.
template <class Ops>
std::size_t eliminate(std::vector<std::vector<std::pair<std::uint32_t, typename Ops::Value>>> rows, std::size_t ncols,
                      const Ops& ops)
{
    using Value = typename Ops::Value;
    using Row = std::vector<std::pair<std::uint32_t, Value>>;
    std::vector<std::vector<std::uint32_t>> col_rows(ncols);
    std::vector<std::size_t> col_count(ncols, 0);
    std::vector<char> row_alive(rows.size(), 1);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r]) {
            col_rows[c].push_back(static_cast<std::uint32_t>(r));
            ++col_count[c];
        }

    using Entry = std::pair<std::size_t, std::uint32_t>;  // (count, column)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (std::size_t c = 0; c < ncols; ++c)
        if (col_count[c] > 0)
            queue.emplace(col_count[c], static_cast<std::uint32_t>(c));

    auto value_at = [&](std::size_t r, std::uint32_t c) -> const Value* {
        const auto& row = rows[r];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::uint32_t col) { return e.first < col; });
        return (it != row.end() && it->first == c) ? &it->second : nullptr;
    };

    std::size_t rank = 0;
    while (!queue.empty()) {
        const auto [count, col] = queue.top();
        queue.pop();
        if (count != col_count[col] || count == 0)
            continue;

        // live rows holding this column, deduplicated
        auto& candidates = col_rows[col];
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        std::erase_if(candidates, [&](std::uint32_t r) { return !row_alive[r] || value_at(r, col) == nullptr; });
        if (candidates.empty())
            continue;

        std::uint32_t pivot = candidates.front();
        auto better = [&](std::uint32_t a, std::uint32_t b) {
            const bool unit_a = Ops::is_unit(*value_at(a, col)), unit_b = Ops::is_unit(*value_at(b, col));
            if (unit_a != unit_b)
                return unit_a;
            if (rows[a].size() != rows[b].size())
                return rows[a].size() < rows[b].size();
            return a < b;
        };
        for (auto r : candidates)
            if (better(r, pivot))
                pivot = r;

        const Value p = *value_at(pivot, col);
        const Row& prow = rows[pivot];
        for (auto r : candidates) {
            if (r == pivot)
                continue;
            const Value a = *value_at(r, col);
            const Row& old = rows[r];
            Row merged;
            merged.reserve(old.size() + prow.size());
            std::size_t i = 0, j = 0;
            while (i < old.size() || j < prow.size()) {
                if (j == prow.size() || (i < old.size() && old[i].first < prow[j].first)) {
                    merged.emplace_back(old[i].first, ops.scale(p, old[i].second));
                    ++i;
                } else if (i == old.size() || prow[j].first < old[i].first) {
                    merged.emplace_back(prow[j].first, ops.negate_scale(a, prow[j].second));
                    col_rows[prow[j].first].push_back(r);
                    ++col_count[prow[j].first];
                    queue.emplace(col_count[prow[j].first], prow[j].first);
                    ++j;
                } else {
                    Value v = ops.combine(p, old[i].second, a, prow[j].second);
                    if (!Ops::is_zero(v)) {
                        merged.emplace_back(old[i].first, std::move(v));
                    } else {
                        --col_count[old[i].first];
                        queue.emplace(col_count[old[i].first], old[i].first);
                    }
                    ++i;
                    ++j;
                }
            }
            Ops::finish(merged);
            rows[r] = std::move(merged);
        }
        row_alive[pivot] = 0;
        for (const auto& [c, v] : prow) {
            --col_count[c];
            if (c != col)
                queue.emplace(col_count[c], c);
        }
        col_count[col] = 0;
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Rank over Q by fraction-free sparse elimination on primitive integer rows, so no
/// fractions appear. Pivot choice is deterministic.
inline std::size_t rank_exact(const SparseMatrixQ& m)
{
    return detail::eliminate(detail::integer_rows(m), m.cols(), detail::IntegerElimination{});
}

inline constexpr std::uint64_t kRankPrime = 2305843009213693951ULL;  // 2^61 - 1

/// Rank of m reduced modulo a prime, or nullopt when some denominator vanishes mod p.
/// Never exceeds rank_exact(m): a minor that is nonzero mod p is nonzero over Z.
inline std::optional<std::size_t> rank_mod_prime(const SparseMatrixQ& m, std::uint64_t prime = kRankPrime)
{
    const detail::ModularElimination ops{prime};
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    auto reduce = [&](const BigInt& x) -> std::uint64_t { return mpz_fdiv_ui(x.get_mpz_t(), prime); };
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> rows(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c)) {
            const std::uint64_t den = reduce(v.get_den());
            if (den == 0)
                return std::nullopt;
            // inverse by Fermat
            std::uint64_t inv = 1, base = den, e = prime - 2;
            for (; e; e >>= 1, base = ops.mul(base, base))
                if (e & 1)
                    inv = ops.mul(inv, base);
            const std::uint64_t val = ops.mul(reduce(v.get_num()), inv);
            if (val != 0)
                rows[r].emplace_back(static_cast<std::uint32_t>(c), val);
        }
    return detail::eliminate(std::move(rows), m.cols(), ops);
}

/// Basis of the null space over Q via reduced row echelon form; one vector per free
/// column (e_f minus the pivot-column combination), so the count is cols - rank.
inline std::vector<std::vector<Rational>> kernel_basis(const SparseMatrixQ& m)
{
    using Row = std::vector<std::pair<std::size_t, Rational>>;
    std::vector<Row> rows(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            rows[r].emplace_back(c, v);

    auto axpy = [](const Row& x, const Rational& s, const Row& y) {  // x - s*y
        Row out;
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            if (j == y.size() || (i < x.size() && x[i].first < y[j].first))
                out.push_back(x[i++]);
            else if (i == x.size() || y[j].first < x[i].first) {
                out.emplace_back(y[j].first, -s * y[j].second);
                ++j;
            } else {
                Rational v = x[i].second - s * y[j].second;
                if (v != 0)
                    out.emplace_back(x[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    };
    auto coeff = [](const Row& row, std::size_t c) -> Rational {
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.first < col; });
        return (it != row.end() && it->first == c) ? it->second : Rational(0);
    };

    std::vector<Row> pivot_rows;          // fully reduced, pivot entry 1
    std::vector<std::size_t> pivot_cols;  // parallel to pivot_rows
    std::vector<long> pivot_of(m.cols(), -1);
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.size() < b.size(); });
    for (auto& row : rows) {
        for (std::size_t k = 0; k < pivot_rows.size() && !row.empty(); ++k) {
            const Rational c = coeff(row, pivot_cols[k]);
            if (c != 0)
                row = axpy(row, c, pivot_rows[k]);
        }
        if (row.empty())
            continue;
        const std::size_t pc = row.front().first;
        const Rational lead = row.front().second;
        for (auto& [c, v] : row)
            v /= lead;
        for (std::size_t k = 0; k < pivot_rows.size(); ++k) {
            const Rational c = coeff(pivot_rows[k], pc);
            if (c != 0)
                pivot_rows[k] = axpy(pivot_rows[k], c, row);
        }
        pivot_of[pc] = static_cast<long>(pivot_rows.size());
        pivot_rows.push_back(std::move(row));
        pivot_cols.push_back(pc);
    }

    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (pivot_of[f] >= 0)
            continue;
        std::vector<Rational> v(m.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < pivot_rows.size(); ++k) {
            const Rational c = coeff(pivot_rows[k], f);
            if (c != 0)
                v[pivot_cols[k]] = -c;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace schouten
