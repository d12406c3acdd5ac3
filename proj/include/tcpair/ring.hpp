#pragma once

#include <tcpair/field.hpp>
#include <tcpair/linalg.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tcpair::rings {

struct Generator
{
    std::string name;
    int degree;
};

/// Exponent vector indexed by generator. A monomial denotes the ordered
/// product x₀^e₀ x₁^e₁ ⋯ in ascending generator order.
using Monomial = std::vector<int>;

struct Term
{
    Rational coeff;
    Monomial monomial;
};

using Polynomial = std::vector<Term>;

struct Presentation
{
    Field field = Field::rationals();
    std::vector<Generator> generators;
    std::vector<Polynomial> relations;
    int top_degree = 0;
};

auto monomial_degree(const std::vector<Generator> & generators, const Monomial & m) -> int;

/// A basis element of the quotient equals sign · (ordered product of monomial).
struct BasisLabel
{
    Monomial monomial;
    int sign;
};

/// Position of a tensor basis element a ⊗ b.
struct TensorSlot
{
    int left_degree;
    int left_index;
    int right_index;
};

class GradedRing;
using RingPtr = std::shared_ptr<const GradedRing>;

class RingElement
{
public:
    RingElement(RingPtr ring, std::vector<std::vector<Rational>> components);

    [[nodiscard]] auto ring() const noexcept -> const RingPtr & { return _ring; }
    [[nodiscard]] auto component(int d) const -> const std::vector<Rational> &;
    [[nodiscard]] auto components() const noexcept -> const std::vector<std::vector<Rational>> & { return _components; }
    [[nodiscard]] auto is_zero() const -> bool;
    [[nodiscard]] auto is_homogeneous() const -> bool;
    /// Degree of a non-zero homogeneous element.
    [[nodiscard]] auto degree() const -> std::optional<int>;
    [[nodiscard]] auto homogeneous_part(int d) const -> RingElement;
    [[nodiscard]] auto nonzero_count() const -> std::size_t;

    auto operator==(const RingElement & other) const -> bool;

private:
    RingPtr _ring;
    std::vector<std::vector<Rational>> _components;
};

auto operator+(const RingElement & a, const RingElement & b) -> RingElement;
auto operator-(const RingElement & a, const RingElement & b) -> RingElement;
auto operator-(const RingElement & a) -> RingElement;
/// Product with full normal-form reduction; components above the top degree vanish.
auto operator*(const RingElement & a, const RingElement & b) -> RingElement;
auto scale(const Rational & c, const RingElement & a) -> RingElement;
auto power(const RingElement & a, int k) -> RingElement;

/// Finitely presented graded-commutative ring, computed degree by degree up
/// to its top degree. Immutable once built.
class GradedRing
{
public:
    /// Degreewise quotient of the free graded-commutative algebra.
    static auto build(Presentation presentation) -> RingPtr;
    /// Graded tensor product with the Koszul sign rule.
    static auto tensor(const RingPtr & left, const RingPtr & right) -> RingPtr;
    static auto tensor(const RingPtr & left, const RingPtr & right, int top_degree) -> RingPtr;

    [[nodiscard]] auto presentation() const noexcept -> const Presentation & { return _presentation; }
    [[nodiscard]] auto field() const noexcept -> const Field & { return _presentation.field; }
    [[nodiscard]] auto top_degree() const noexcept -> int { return _presentation.top_degree; }
    [[nodiscard]] auto generator_count() const noexcept -> int { return static_cast<int>(_presentation.generators.size()); }
    [[nodiscard]] auto generator(int g) const -> const Generator & { return _presentation.generators.at(static_cast<std::size_t>(g)); }
    [[nodiscard]] auto generator_index(const std::string & name) const -> int;

    [[nodiscard]] auto rank(int d) const -> int;
    [[nodiscard]] auto ranks() const -> std::vector<int>;
    [[nodiscard]] auto label(int d, int i) const -> const BasisLabel &;
    [[nodiscard]] auto id() const noexcept -> std::uint64_t { return _id; }

    [[nodiscard]] auto is_tensor() const noexcept -> bool { return _left != nullptr; }
    [[nodiscard]] auto left() const noexcept -> const RingPtr & { return _left; }
    [[nodiscard]] auto right() const noexcept -> const RingPtr & { return _right; }
    [[nodiscard]] auto slot(int d, int i) const -> const TensorSlot &;
    [[nodiscard]] auto slot_index(int left_degree, int left_index, int right_degree, int right_index) const -> int;

    [[nodiscard]] auto zero() const -> RingElement;
    [[nodiscard]] auto one() const -> RingElement;
    [[nodiscard]] auto basis_element(int d, int i) const -> RingElement;
    [[nodiscard]] auto generator_element(int g) const -> RingElement;
    [[nodiscard]] auto generator_element(const std::string & name) const -> RingElement;

    /// Normal form of a polynomial in the generators.
    [[nodiscard]] auto reduce(const Polynomial & p) const -> RingElement;
    [[nodiscard]] auto to_polynomial(const RingElement & a) const -> Polynomial;

    /// x_g · v for v in degree d, as a vector in degree d + |x_g|.
    [[nodiscard]] auto apply_generator(int g, int d, const std::vector<Rational> & v) const -> std::vector<Rational>;

    /// a · b computed by expanding the left factor over basis labels, never
    /// using graded commutativity. Reference path for tests.
    [[nodiscard]] static auto multiply_by_left_labels(const RingElement & a, const RingElement & b) -> RingElement;

private:
    GradedRing();

    [[nodiscard]] auto self() const -> RingPtr;
    [[nodiscard]] auto apply_monomial(const Monomial & m, int d, std::vector<Rational> v) const -> std::pair<int, std::vector<Rational>>;

    friend auto operator*(const RingElement & a, const RingElement & b) -> RingElement;

    Presentation _presentation;
    std::vector<std::vector<BasisLabel>> _labels;
    // _generator_columns[g][d][i]: image of basis element i of degree d under x_g.
    std::vector<std::vector<std::vector<linalg::SparseRow>>> _generator_columns;
    RingPtr _left, _right;
    std::vector<std::vector<TensorSlot>> _slots;
    std::vector<std::vector<int>> _slot_offsets;
    std::uint64_t _id;
    std::weak_ptr<const GradedRing> _weak_self;
};

auto require_same_ring(const RingElement & a, const RingElement & b) -> void;

/// a ⊗ b in a tensor ring whose factors are a.ring() and b.ring().
auto tensor_element(const RingPtr & tensor_ring, const RingElement & a, const RingElement & b) -> RingElement;

/// Degree-preserving ring homomorphism given by generator images. Every
/// source relation (and the source truncation) is checked to map to zero.
class RingHom
{
public:
    RingHom(RingPtr source, RingPtr target, std::vector<RingElement> images);

    static auto identity(const RingPtr & ring) -> RingHom;

    [[nodiscard]] auto source() const noexcept -> const RingPtr & { return _source; }
    [[nodiscard]] auto target() const noexcept -> const RingPtr & { return _target; }
    [[nodiscard]] auto image(int g) const -> const RingElement & { return _images.at(static_cast<std::size_t>(g)); }
    [[nodiscard]] auto images() const noexcept -> const std::vector<RingElement> & { return _images; }
    [[nodiscard]] auto apply(const RingElement & a) const -> RingElement;
    [[nodiscard]] auto apply(const Polynomial & p) const -> RingElement;
    /// Matrix of the degree-d component: rows index target basis, columns source basis.
    [[nodiscard]] auto matrix(int d) const -> linalg::DenseMatrix;

private:
    RingPtr _source, _target;
    std::vector<RingElement> _images;
    std::vector<std::vector<RingElement>> _basis_images;
};

}
