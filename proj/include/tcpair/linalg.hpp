#pragma once

#include <tcpair/field.hpp>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace tcpair::linalg {

/// Sparse row: (column, value) pairs sorted by column, no explicit zeros.
using SparseRow = std::vector<std::pair<int, Rational>>;
using DenseMatrix = std::vector<std::vector<Rational>>;

/// Incremental row echelon form over a field. Every stored row has leading
/// coefficient 1 at its pivot column and no entries left of it.
class Echelon
{
public:
    explicit Echelon(Field field) :
        _field(field)
    {
    }

    /// Reduces the row against the stored pivots and keeps it when it is
    /// independent. Returns true when the rank grew.
    auto add(SparseRow row) -> bool;

    /// Clears every pivot column from every other stored row (reduced form).
    void finalize();

    [[nodiscard]] auto rank() const noexcept -> int { return static_cast<int>(_pivots.size()); }
    [[nodiscard]] auto is_pivot(int col) const -> bool { return _pivots.contains(col); }
    [[nodiscard]] auto pivot_row(int col) const -> const SparseRow & { return _pivots.at(col); }
    [[nodiscard]] auto pivots() const noexcept -> const std::map<int, SparseRow> & { return _pivots; }

    /// Reduces a row against the stored pivots without storing it.
    [[nodiscard]] auto reduce(SparseRow row) const -> SparseRow;

private:
    Field _field;
    std::map<int, SparseRow> _pivots;
};

auto axpy(const Field & f, const SparseRow & x, const Rational & a, const SparseRow & y) -> SparseRow;

auto to_sparse(const std::vector<Rational> & dense) -> SparseRow;

auto rank(const Field & f, const DenseMatrix & rows) -> int;

/// Basis of {v : M v = 0} for M given by rows over `cols` columns.
auto nullspace(const Field & f, const DenseMatrix & rows, int cols) -> DenseMatrix;

/// Solves M x = b; returns nothing when inconsistent.
auto solve(const Field & f, const DenseMatrix & rows, const std::vector<Rational> & b) -> std::optional<std::vector<Rational>>;

}
