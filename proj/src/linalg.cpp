#include <tcpair/linalg.hpp>

#include <algorithm>

namespace tcpair::linalg {

auto axpy(const Field & f, const SparseRow & x, const Rational & a, const SparseRow & y) -> SparseRow
{
    // x + a·y
    SparseRow out;
    out.reserve(x.size() + y.size());
    auto i = x.begin(), j = y.begin();
    while (i != x.end() || j != y.end()) {
        if (j == y.end() || (i != x.end() && i->first < j->first)) {
            out.push_back(*i++);
        }
        else if (i == x.end() || j->first < i->first) {
            auto v = f.mul(a, j->second);
            if (sgn(v) != 0)
                out.emplace_back(j->first, std::move(v));
            ++j;
        }
        else {
            auto v = f.add(i->second, f.mul(a, j->second));
            if (sgn(v) != 0)
                out.emplace_back(i->first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

auto Echelon::reduce(SparseRow row) const -> SparseRow
{
    std::size_t idx = 0;
    while (idx < row.size()) {
        auto it = _pivots.find(row[idx].first);
        if (it == _pivots.end()) {
            ++idx;
            continue;
        }
        auto factor = _field.neg(row[idx].second);
        row = axpy(_field, row, factor, it->second);
    }
    return row;
}

auto Echelon::add(SparseRow row) -> bool
{
    row = reduce(std::move(row));
    if (row.empty())
        return false;
    auto lead_inv = _field.inv(row.front().second);
    for (auto & [c, v] : row)
        v = _field.mul(v, lead_inv);
    int col = row.front().first;
    _pivots.emplace(col, std::move(row));
    return true;
}

void Echelon::finalize()
{
    for (auto it = _pivots.rbegin(); it != _pivots.rend(); ++it) {
        auto & row = it->second;
        std::size_t idx = 1;
        while (idx < row.size()) {
            auto p = _pivots.find(row[idx].first);
            if (p == _pivots.end() || p->first == it->first) {
                ++idx;
                continue;
            }
            auto factor = _field.neg(row[idx].second);
            row = axpy(_field, row, factor, p->second);
        }
    }
}

auto to_sparse(const std::vector<Rational> & dense) -> SparseRow
{
    SparseRow out;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (sgn(dense[i]) != 0)
            out.emplace_back(static_cast<int>(i), dense[i]);
    return out;
}

auto rank(const Field & f, const DenseMatrix & rows) -> int
{
    Echelon e{f};
    for (auto & r : rows)
        e.add(to_sparse(r));
    return e.rank();
}

auto nullspace(const Field & f, const DenseMatrix & rows, int cols) -> DenseMatrix
{
    Echelon e{f};
    for (auto & r : rows)
        e.add(to_sparse(r));
    e.finalize();

    DenseMatrix basis;
    for (int free = 0; free < cols; ++free) {
        if (e.is_pivot(free))
            continue;
        std::vector<Rational> v(static_cast<std::size_t>(cols), Rational{0});
        v[static_cast<std::size_t>(free)] = 1;
        for (auto & [pc, row] : e.pivots())
            for (auto & [c, val] : row)
                if (c == free)
                    v[static_cast<std::size_t>(pc)] = f.neg(val);
        basis.push_back(std::move(v));
    }
    return basis;
}

auto solve(const Field & f, const DenseMatrix & rows, const std::vector<Rational> & b) -> std::optional<std::vector<Rational>>
{
    if (rows.empty())
        return std::all_of(b.begin(), b.end(), [](auto & x) { return sgn(x) == 0; }) ? std::optional<std::vector<Rational>>{std::vector<Rational>{}} : std::nullopt;
    int cols = static_cast<int>(rows.front().size());
    Echelon e{f};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto row = to_sparse(rows[i]);
        if (sgn(b[i]) != 0)
            row.emplace_back(cols, b[i]);
        e.add(std::move(row));
    }
    e.finalize();
    if (e.is_pivot(cols))
        return std::nullopt;
    std::vector<Rational> x(static_cast<std::size_t>(cols), Rational{0});
    for (auto & [pc, row] : e.pivots())
        for (auto & [c, val] : row)
            if (c == cols)
                x[static_cast<std::size_t>(pc)] = val;
    return x;
}

}
