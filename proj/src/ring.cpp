#include <tcpair/error.hpp>
#include <tcpair/ring.hpp>

#include <algorithm>
#include <atomic>
#include <map>
#include <set>

namespace tcpair::rings {

using linalg::SparseRow;

namespace {
    std::atomic<std::uint64_t> next_ring_id{1};

    auto add_into(const Field & f, std::vector<Rational> & acc, const std::vector<Rational> & v, const Rational & c)
    {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (sgn(v[i]) != 0)
                acc[i] = f.add(acc[i], f.mul(c, v[i]));
    }

    auto all_zero(const std::vector<Rational> & v) -> bool
    {
        return std::all_of(v.begin(), v.end(), [](auto & x) { return sgn(x) == 0; });
    }

    auto lowest_generator(const Monomial & m) -> int
    {
        for (std::size_t g = 0; g < m.size(); ++g)
            if (m[g] > 0)
                return static_cast<int>(g);
        return -1;
    }

    void validate(Presentation & p)
    {
        if (p.top_degree < 0)
            fail(ErrorCode::PreconditionFailed, "top degree must be non-negative");
        std::set<std::string> names;
        for (auto & g : p.generators) {
            if (g.degree < 1)
                fail(ErrorCode::PreconditionFailed, "generator '" + g.name + "' must have degree >= 1");
            if (g.name.empty() || ! names.insert(g.name).second)
                fail(ErrorCode::PreconditionFailed, "generator names must be non-empty and distinct ('" + g.name + "')");
        }
        for (std::size_t r = 0; r < p.relations.size(); ++r) {
            Polynomial cleaned;
            std::optional<int> degree;
            for (auto & t : p.relations[r]) {
                if (t.monomial.size() != p.generators.size())
                    fail(ErrorCode::PreconditionFailed, "relation " + std::to_string(r + 1) + " has a monomial of the wrong length");
                for (int e : t.monomial)
                    if (e < 0)
                        fail(ErrorCode::PreconditionFailed, "relation " + std::to_string(r + 1) + " has a negative exponent");
                auto c = p.field.from(t.coeff);
                if (sgn(c) == 0)
                    continue;
                int d = monomial_degree(p.generators, t.monomial);
                if (degree && *degree != d)
                    fail(ErrorCode::PreconditionFailed, "relation " + std::to_string(r + 1) + " is not homogeneous");
                degree = d;
                cleaned.push_back(Term{c, t.monomial});
            }
            p.relations[r] = std::move(cleaned);
        }
    }
}

auto monomial_degree(const std::vector<Generator> & generators, const Monomial & m) -> int
{
    int d = 0;
    for (std::size_t g = 0; g < m.size(); ++g)
        d += m[g] * generators[g].degree;
    return d;
}

RingElement::RingElement(RingPtr ring, std::vector<std::vector<Rational>> components) :
    _ring(std::move(ring)),
    _components(std::move(components))
{
}

auto RingElement::component(int d) const -> const std::vector<Rational> &
{
    static const std::vector<Rational> empty;
    if (d < 0 || d >= static_cast<int>(_components.size()))
        return empty;
    return _components[static_cast<std::size_t>(d)];
}

auto RingElement::is_zero() const -> bool
{
    return std::all_of(_components.begin(), _components.end(), all_zero);
}

auto RingElement::is_homogeneous() const -> bool
{
    int seen = 0;
    for (auto & c : _components)
        if (! all_zero(c))
            ++seen;
    return seen <= 1;
}

auto RingElement::degree() const -> std::optional<int>
{
    std::optional<int> d;
    for (std::size_t i = 0; i < _components.size(); ++i)
        if (! all_zero(_components[i])) {
            if (d)
                return std::nullopt;
            d = static_cast<int>(i);
        }
    return d;
}

auto RingElement::homogeneous_part(int d) const -> RingElement
{
    auto out = _ring->zero();
    if (d >= 0 && d < static_cast<int>(_components.size()))
        out._components[static_cast<std::size_t>(d)] = _components[static_cast<std::size_t>(d)];
    return out;
}

auto RingElement::nonzero_count() const -> std::size_t
{
    std::size_t n = 0;
    for (auto & c : _components)
        for (auto & x : c)
            if (sgn(x) != 0)
                ++n;
    return n;
}

auto RingElement::operator==(const RingElement & other) const -> bool
{
    return _ring == other._ring && _components == other._components;
}

auto require_same_ring(const RingElement & a, const RingElement & b) -> void
{
    if (a.ring() != b.ring())
        fail(ErrorCode::RingMismatch, "elements belong to different rings");
}

auto operator+(const RingElement & a, const RingElement & b) -> RingElement
{
    require_same_ring(a, b);
    auto & f = a.ring()->field();
    auto comps = a.components();
    for (std::size_t d = 0; d < comps.size(); ++d)
        for (std::size_t i = 0; i < comps[d].size(); ++i)
            comps[d][i] = f.add(comps[d][i], b.components()[d][i]);
    return RingElement{a.ring(), std::move(comps)};
}

auto operator-(const RingElement & a) -> RingElement
{
    auto & f = a.ring()->field();
    auto comps = a.components();
    for (auto & c : comps)
        for (auto & x : c)
            x = f.neg(x);
    return RingElement{a.ring(), std::move(comps)};
}

auto operator-(const RingElement & a, const RingElement & b) -> RingElement
{
    return a + (-b);
}

auto scale(const Rational & c, const RingElement & a) -> RingElement
{
    auto & f = a.ring()->field();
    auto k = f.from(c);
    auto comps = a.components();
    for (auto & comp : comps)
        for (auto & x : comp)
            x = f.mul(k, x);
    return RingElement{a.ring(), std::move(comps)};
}

auto power(const RingElement & a, int k) -> RingElement
{
    if (k < 0)
        fail(ErrorCode::PreconditionFailed, "negative exponent");
    auto result = a.ring()->one();
    for (int i = 0; i < k; ++i)
        result = a * result;
    return result;
}

GradedRing::GradedRing() :
    _id(next_ring_id++)
{
}

auto GradedRing::self() const -> RingPtr
{
    return _weak_self.lock();
}

auto GradedRing::generator_index(const std::string & name) const -> int
{
    for (int g = 0; g < generator_count(); ++g)
        if (generator(g).name == name)
            return g;
    fail(ErrorCode::IndexOutOfRange, "no generator named '" + name + "'");
}

auto GradedRing::rank(int d) const -> int
{
    if (d < 0 || d > top_degree())
        return 0;
    return static_cast<int>(_labels[static_cast<std::size_t>(d)].size());
}

auto GradedRing::ranks() const -> std::vector<int>
{
    std::vector<int> r;
    for (int d = 0; d <= top_degree(); ++d)
        r.push_back(rank(d));
    return r;
}

auto GradedRing::label(int d, int i) const -> const BasisLabel &
{
    return _labels.at(static_cast<std::size_t>(d)).at(static_cast<std::size_t>(i));
}

auto GradedRing::slot(int d, int i) const -> const TensorSlot &
{
    if (! is_tensor())
        fail(ErrorCode::PreconditionFailed, "ring is not a tensor product");
    return _slots.at(static_cast<std::size_t>(d)).at(static_cast<std::size_t>(i));
}

auto GradedRing::slot_index(int left_degree, int left_index, int right_degree, int right_index) const -> int
{
    int d = left_degree + right_degree;
    return _slot_offsets.at(static_cast<std::size_t>(d)).at(static_cast<std::size_t>(left_degree)) + left_index * _right->rank(right_degree) + right_index;
}

auto GradedRing::zero() const -> RingElement
{
    std::vector<std::vector<Rational>> comps;
    for (int d = 0; d <= top_degree(); ++d)
        comps.emplace_back(static_cast<std::size_t>(rank(d)), Rational{0});
    return RingElement{self(), std::move(comps)};
}

auto GradedRing::one() const -> RingElement
{
    return basis_element(0, 0);
}

auto GradedRing::basis_element(int d, int i) const -> RingElement
{
    if (d < 0 || d > top_degree() || i < 0 || i >= rank(d))
        fail(ErrorCode::IndexOutOfRange, "basis element (" + std::to_string(d) + ", " + std::to_string(i) + ") does not exist");
    auto z = zero();
    auto comps = z.components();
    comps[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)] = 1;
    return RingElement{self(), std::move(comps)};
}

auto GradedRing::generator_element(int g) const -> RingElement
{
    if (g < 0 || g >= generator_count())
        fail(ErrorCode::IndexOutOfRange, "generator index " + std::to_string(g) + " out of range");
    Monomial m(static_cast<std::size_t>(generator_count()), 0);
    m[static_cast<std::size_t>(g)] = 1;
    return reduce(Polynomial{Term{1, m}});
}

auto GradedRing::generator_element(const std::string & name) const -> RingElement
{
    return generator_element(generator_index(name));
}

auto GradedRing::apply_generator(int g, int d, const std::vector<Rational> & v) const -> std::vector<Rational>
{
    int target = d + generator(g).degree;
    std::vector<Rational> out(static_cast<std::size_t>(rank(target)), Rational{0});
    if (target > top_degree())
        return out;
    auto & cols = _generator_columns[static_cast<std::size_t>(g)][static_cast<std::size_t>(d)];
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0)
            continue;
        for (auto & [row, c] : cols[i])
            out[static_cast<std::size_t>(row)] = field().add(out[static_cast<std::size_t>(row)], field().mul(v[i], c));
    }
    return out;
}

auto GradedRing::apply_monomial(const Monomial & m, int d, std::vector<Rational> v) const -> std::pair<int, std::vector<Rational>>
{
    for (int g = generator_count() - 1; g >= 0; --g)
        for (int e = 0; e < m[static_cast<std::size_t>(g)]; ++e) {
            v = apply_generator(g, d, v);
            d += generator(g).degree;
            if (d > top_degree())
                return {d, {}};
        }
    return {d, std::move(v)};
}

auto GradedRing::reduce(const Polynomial & p) const -> RingElement
{
    auto out = zero();
    auto comps = out.components();
    for (auto & t : p) {
        if (static_cast<int>(t.monomial.size()) != generator_count())
            fail(ErrorCode::PreconditionFailed, "monomial has the wrong number of exponents");
        auto [d, v] = apply_monomial(t.monomial, 0, std::vector<Rational>{Rational{1}});
        if (d > top_degree())
            continue;
        add_into(field(), comps[static_cast<std::size_t>(d)], v, field().from(t.coeff));
    }
    return RingElement{self(), std::move(comps)};
}

auto GradedRing::to_polynomial(const RingElement & a) const -> Polynomial
{
    if (a.ring().get() != this)
        fail(ErrorCode::RingMismatch, "element belongs to a different ring");
    Polynomial p;
    for (int d = 0; d <= top_degree(); ++d)
        for (int i = 0; i < rank(d); ++i) {
            auto & c = a.component(d)[static_cast<std::size_t>(i)];
            if (sgn(c) == 0)
                continue;
            auto & l = label(d, i);
            p.push_back(Term{field().mul(c, field().from(l.sign)), l.monomial});
        }
    return p;
}

auto GradedRing::multiply_by_left_labels(const RingElement & a, const RingElement & b) -> RingElement
{
    require_same_ring(a, b);
    auto & ring = *a.ring();
    auto & f = ring.field();
    auto comps = ring.zero().components();
    for (int p = 0; p <= ring.top_degree(); ++p)
        for (int i = 0; i < ring.rank(p); ++i) {
            auto & c = a.component(p)[static_cast<std::size_t>(i)];
            if (sgn(c) == 0)
                continue;
            auto & l = ring.label(p, i);
            auto coeff = f.mul(c, f.from(l.sign));
            for (int q = 0; q + p <= ring.top_degree(); ++q) {
                if (all_zero(b.component(q)))
                    continue;
                auto [d, v] = ring.apply_monomial(l.monomial, q, b.component(q));
                if (d <= ring.top_degree())
                    add_into(f, comps[static_cast<std::size_t>(d)], v, coeff);
            }
        }
    return RingElement{a.ring(), std::move(comps)};
}

auto operator*(const RingElement & a, const RingElement & b) -> RingElement
{
    require_same_ring(a, b);
    auto & ring = *a.ring();
    auto & f = ring.field();
    auto comps = ring.zero().components();
    auto count = [](const std::vector<Rational> & v) {
        return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto & x) { return sgn(x) != 0; }));
    };
    // Expand whichever homogeneous piece is sparser; the other order costs a
    // Koszul sign (−1)^{pq}.
    for (int p = 0; p <= ring.top_degree(); ++p) {
        auto na = count(a.component(p));
        if (na == 0)
            continue;
        for (int q = 0; p + q <= ring.top_degree(); ++q) {
            auto nb = count(b.component(q));
            if (nb == 0)
                continue;
            bool expand_left = na <= nb;
            auto & expanded = expand_left ? a.component(p) : b.component(q);
            auto & other = expand_left ? b.component(q) : a.component(p);
            int expanded_degree = expand_left ? p : q;
            int other_degree = expand_left ? q : p;
            auto sign = expand_left ? f.from(1) : f.sign(static_cast<long>(p) * q);
            for (std::size_t i = 0; i < expanded.size(); ++i) {
                if (sgn(expanded[i]) == 0)
                    continue;
                auto & l = ring.label(expanded_degree, static_cast<int>(i));
                auto coeff = f.mul(f.mul(expanded[i], f.from(l.sign)), sign);
                auto [d, v] = ring.apply_monomial(l.monomial, other_degree, other);
                add_into(f, comps[static_cast<std::size_t>(p + q)], v, coeff);
                (void)d;
            }
        }
    }
    return RingElement{a.ring(), std::move(comps)};
}

auto GradedRing::build(Presentation presentation) -> RingPtr
{
    validate(presentation);
    auto ring = std::shared_ptr<GradedRing>(new GradedRing());
    ring->_presentation = std::move(presentation);
    ring->_weak_self = ring;

    auto & P = ring->_presentation;
    auto & f = P.field;
    const int top = P.top_degree;
    const int ngen = static_cast<int>(P.generators.size());
    const bool signs = f.characteristic() != 2;

    std::map<int, std::vector<const Polynomial *>> relations_by_degree;
    for (auto & r : P.relations)
        if (! r.empty())
            relations_by_degree[monomial_degree(P.generators, r.front().monomial)].push_back(&r);

    ring->_labels.assign(static_cast<std::size_t>(top + 1), {});
    ring->_labels[0].push_back(BasisLabel{Monomial(static_cast<std::size_t>(ngen), 0), 1});
    ring->_generator_columns.assign(static_cast<std::size_t>(ngen), std::vector<std::vector<SparseRow>>(static_cast<std::size_t>(top + 1)));

    auto deg = [&](int g) { return P.generators[static_cast<std::size_t>(g)].degree; };

    for (int d = 1; d <= top; ++d) {
        // Candidate spanning set: pairs (g, n) standing for x_g · n with n a
        // basis element of degree d − |x_g|.
        struct Column
        {
            int g, n;
        };
        std::vector<Column> noncanonical, canonical;
        for (int g = 0; g < ngen; ++g) {
            int dn = d - deg(g);
            if (dn < 0)
                continue;
            for (int n = 0; n < ring->rank(dn); ++n) {
                int low = lowest_generator(ring->label(dn, n).monomial);
                (low == -1 || g <= low ? canonical : noncanonical).push_back(Column{g, n});
            }
        }
        std::reverse(canonical.begin(), canonical.end());
        std::vector<Column> columns = noncanonical;
        columns.insert(columns.end(), canonical.begin(), canonical.end());

        std::vector<std::vector<int>> column_of(static_cast<std::size_t>(ngen));
        for (int g = 0; g < ngen; ++g)
            if (d - deg(g) >= 0)
                column_of[static_cast<std::size_t>(g)].assign(static_cast<std::size_t>(ring->rank(d - deg(g))), -1);
        for (std::size_t c = 0; c < columns.size(); ++c)
            column_of[static_cast<std::size_t>(columns[c].g)][static_cast<std::size_t>(columns[c].n)] = static_cast<int>(c);

        // x_g · v as a row over the candidate columns.
        auto embed = [&](int g, const std::vector<Rational> & v, const Rational & c, std::map<int, Rational> & row) {
            for (std::size_t n = 0; n < v.size(); ++n) {
                if (sgn(v[n]) == 0)
                    continue;
                int col = column_of[static_cast<std::size_t>(g)][n];
                auto & slot = row[col];
                slot = f.add(slot, f.mul(c, v[n]));
            }
        };
        auto to_row = [](std::map<int, Rational> & m) {
            SparseRow row;
            for (auto & [c, v] : m)
                if (sgn(v) != 0)
                    row.emplace_back(c, v);
            return row;
        };

        linalg::Echelon echelon{f};

        for (int g1 = 0; g1 < ngen; ++g1)
            for (int g2 = g1; g2 < ngen; ++g2) {
                int ds = d - deg(g1) - deg(g2);
                if (ds < 0)
                    continue;
                bool odd_square = g1 == g2 && deg(g1) % 2 == 1 && signs;
                if (g1 == g2 && ! odd_square)
                    continue;
                for (int s = 0; s < ring->rank(ds); ++s) {
                    std::vector<Rational> unit(static_cast<std::size_t>(ring->rank(ds)), Rational{0});
                    unit[static_cast<std::size_t>(s)] = 1;
                    std::map<int, Rational> row;
                    if (odd_square) {
                        // x·x = −x·x forces x_g (x_g s) = 0 away from characteristic 2.
                        embed(g1, ring->apply_generator(g1, ds, unit), f.from(1), row);
                    }
                    else {
                        embed(g1, ring->apply_generator(g2, ds, unit), f.from(1), row);
                        embed(g2, ring->apply_generator(g1, ds, unit), f.neg(f.sign(static_cast<long>(deg(g1)) * deg(g2))), row);
                    }
                    echelon.add(to_row(row));
                }
            }

        if (auto it = relations_by_degree.find(d); it != relations_by_degree.end())
            for (auto * rel : it->second) {
                std::map<int, Rational> row;
                for (auto & t : *rel) {
                    int g = lowest_generator(t.monomial);
                    auto rest = t.monomial;
                    --rest[static_cast<std::size_t>(g)];
                    auto [dr, v] = ring->apply_monomial(rest, 0, std::vector<Rational>{Rational{1}});
                    embed(g, v, t.coeff, row);
                }
                echelon.add(to_row(row));
            }

        echelon.finalize();

        std::vector<int> basis_position(columns.size(), -1);
        auto & labels = ring->_labels[static_cast<std::size_t>(d)];
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (echelon.is_pivot(static_cast<int>(c)))
                continue;
            basis_position[c] = static_cast<int>(labels.size());
            auto [g, n] = columns[c];
            auto & lower = ring->label(d - deg(g), n);
            BasisLabel l{lower.monomial, lower.sign};
            long swaps = 0;
            for (int h = 0; h < g; ++h)
                swaps += static_cast<long>(l.monomial[static_cast<std::size_t>(h)]) * deg(h);
            if (signs && deg(g) % 2 == 1 && swaps % 2 == 1)
                l.sign = -l.sign;
            ++l.monomial[static_cast<std::size_t>(g)];
            labels.push_back(std::move(l));
        }

        for (int g = 0; g < ngen; ++g) {
            int dn = d - deg(g);
            if (dn < 0)
                continue;
            auto & cols = ring->_generator_columns[static_cast<std::size_t>(g)][static_cast<std::size_t>(dn)];
            cols.assign(static_cast<std::size_t>(ring->rank(dn)), {});
            for (int n = 0; n < ring->rank(dn); ++n) {
                int c = column_of[static_cast<std::size_t>(g)][static_cast<std::size_t>(n)];
                SparseRow image;
                if (basis_position[static_cast<std::size_t>(c)] >= 0)
                    image.emplace_back(basis_position[static_cast<std::size_t>(c)], Rational{1});
                else
                    for (auto & [j, v] : echelon.pivot_row(c))
                        if (j != c)
                            image.emplace_back(basis_position[static_cast<std::size_t>(j)], f.neg(v));
                std::sort(image.begin(), image.end(), [](auto & x, auto & y) { return x.first < y.first; });
                cols[static_cast<std::size_t>(n)] = std::move(image);
            }
        }
    }
    return ring;
}

auto GradedRing::tensor(const RingPtr & left, const RingPtr & right) -> RingPtr
{
    return tensor(left, right, left->top_degree() + right->top_degree());
}

auto GradedRing::tensor(const RingPtr & left, const RingPtr & right, int top) -> RingPtr
{
    if (left->field() != right->field())
        fail(ErrorCode::FieldMismatch, "tensor factors are over " + left->field().name() + " and " + right->field().name());
    top = std::min(top, left->top_degree() + right->top_degree());

    auto ring = std::shared_ptr<GradedRing>(new GradedRing());
    ring->_weak_self = ring;
    ring->_left = left;
    ring->_right = right;

    auto & P = ring->_presentation;
    P.field = left->field();
    P.top_degree = top;
    const int nl = left->generator_count(), nr = right->generator_count();

    std::set<std::string> left_names, right_names;
    for (int g = 0; g < nl; ++g)
        left_names.insert(left->generator(g).name);
    for (int g = 0; g < nr; ++g)
        right_names.insert(right->generator(g).name);
    for (int g = 0; g < nl; ++g) {
        auto name = left->generator(g).name;
        P.generators.push_back(Generator{right_names.contains(name) ? name + "_L" : name, left->generator(g).degree});
    }
    for (int g = 0; g < nr; ++g) {
        auto name = right->generator(g).name;
        P.generators.push_back(Generator{left_names.contains(name) ? name + "_R" : name, right->generator(g).degree});
    }
    for (auto & r : left->presentation().relations) {
        Polynomial p;
        for (auto & t : r) {
            Monomial m = t.monomial;
            m.resize(static_cast<std::size_t>(nl + nr), 0);
            p.push_back(Term{t.coeff, m});
        }
        P.relations.push_back(std::move(p));
    }
    for (auto & r : right->presentation().relations) {
        Polynomial p;
        for (auto & t : r) {
            Monomial m(static_cast<std::size_t>(nl), 0);
            m.insert(m.end(), t.monomial.begin(), t.monomial.end());
            p.push_back(Term{t.coeff, m});
        }
        P.relations.push_back(std::move(p));
    }

    ring->_labels.assign(static_cast<std::size_t>(top + 1), {});
    ring->_slots.assign(static_cast<std::size_t>(top + 1), {});
    ring->_slot_offsets.assign(static_cast<std::size_t>(top + 1), {});
    for (int d = 0; d <= top; ++d) {
        for (int pa = 0; pa <= d; ++pa) {
            ring->_slot_offsets[static_cast<std::size_t>(d)].push_back(static_cast<int>(ring->_slots[static_cast<std::size_t>(d)].size()));
            int pb = d - pa;
            for (int ia = 0; ia < left->rank(pa); ++ia)
                for (int ib = 0; ib < right->rank(pb); ++ib) {
                    ring->_slots[static_cast<std::size_t>(d)].push_back(TensorSlot{pa, ia, ib});
                    auto & la = left->label(pa, ia);
                    auto & lb = right->label(pb, ib);
                    Monomial m = la.monomial;
                    m.insert(m.end(), lb.monomial.begin(), lb.monomial.end());
                    ring->_labels[static_cast<std::size_t>(d)].push_back(BasisLabel{m, la.sign * lb.sign});
                }
        }
    }

    auto & f = P.field;
    ring->_generator_columns.assign(static_cast<std::size_t>(nl + nr), std::vector<std::vector<SparseRow>>(static_cast<std::size_t>(top + 1)));
    for (int g = 0; g < nl + nr; ++g) {
        int e = P.generators[static_cast<std::size_t>(g)].degree;
        for (int d = 0; d + e <= top; ++d) {
            auto & cols = ring->_generator_columns[static_cast<std::size_t>(g)][static_cast<std::size_t>(d)];
            cols.resize(static_cast<std::size_t>(ring->rank(d)));
            for (int i = 0; i < ring->rank(d); ++i) {
                auto [pa, ia, ib] = ring->_slots[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
                int pb = d - pa;
                SparseRow image;
                if (g < nl) {
                    if (pa + e <= left->top_degree())
                        for (auto & [ja, c] : left->_generator_columns[static_cast<std::size_t>(g)][static_cast<std::size_t>(pa)][static_cast<std::size_t>(ia)])
                            image.emplace_back(ring->slot_index(pa + e, ja, pb, ib), c);
                }
                else {
                    int h = g - nl;
                    // y · (a ⊗ b) = (−1)^{|y||a|} a ⊗ (y b)
                    auto sign = f.sign(static_cast<long>(e) * pa);
                    if (pb + e <= right->top_degree())
                        for (auto & [jb, c] : right->_generator_columns[static_cast<std::size_t>(h)][static_cast<std::size_t>(pb)][static_cast<std::size_t>(ib)])
                            image.emplace_back(ring->slot_index(pa, ia, pb + e, jb), f.mul(sign, c));
                }
                std::sort(image.begin(), image.end(), [](auto & x, auto & y) { return x.first < y.first; });
                cols[static_cast<std::size_t>(i)] = std::move(image);
            }
        }
    }
    return ring;
}

auto tensor_element(const RingPtr & tensor_ring, const RingElement & a, const RingElement & b) -> RingElement
{
    if (! tensor_ring->is_tensor() || tensor_ring->left() != a.ring() || tensor_ring->right() != b.ring())
        fail(ErrorCode::RingMismatch, "tensor_element needs elements of the two tensor factors");
    auto & f = tensor_ring->field();
    auto comps = tensor_ring->zero().components();
    for (int pa = 0; pa <= a.ring()->top_degree(); ++pa)
        for (int pb = 0; pb <= b.ring()->top_degree() && pa + pb <= tensor_ring->top_degree(); ++pb)
            for (int ia = 0; ia < a.ring()->rank(pa); ++ia) {
                auto & ca = a.component(pa)[static_cast<std::size_t>(ia)];
                if (sgn(ca) == 0)
                    continue;
                for (int ib = 0; ib < b.ring()->rank(pb); ++ib) {
                    auto & cb = b.component(pb)[static_cast<std::size_t>(ib)];
                    if (sgn(cb) == 0)
                        continue;
                    auto & slot = comps[static_cast<std::size_t>(pa + pb)][static_cast<std::size_t>(tensor_ring->slot_index(pa, ia, pb, ib))];
                    slot = f.add(slot, f.mul(ca, cb));
                }
            }
    return RingElement{tensor_ring, std::move(comps)};
}

RingHom::RingHom(RingPtr source, RingPtr target, std::vector<RingElement> images) :
    _source(std::move(source)),
    _target(std::move(target)),
    _images(std::move(images))
{
    if (_source->field() != _target->field())
        fail(ErrorCode::FieldMismatch, "homomorphism between rings over " + _source->field().name() + " and " + _target->field().name());
    if (static_cast<int>(_images.size()) != _source->generator_count())
        fail(ErrorCode::PreconditionFailed, "expected one image per source generator");
    for (int g = 0; g < _source->generator_count(); ++g) {
        auto & img = _images[static_cast<std::size_t>(g)];
        if (img.ring() != _target)
            fail(ErrorCode::RingMismatch, "image of '" + _source->generator(g).name + "' is not an element of the target ring");
        auto d = img.degree();
        if (! img.is_zero() && (! d || *d != _source->generator(g).degree))
            fail(ErrorCode::PreconditionFailed, "image of '" + _source->generator(g).name + "' does not have degree " + std::to_string(_source->generator(g).degree));
    }

    auto eval = [&](const Monomial & m) {
        auto acc = _target->one();
        for (int g = _source->generator_count() - 1; g >= 0; --g)
            for (int e = 0; e < m[static_cast<std::size_t>(g)]; ++e)
                acc = _images[static_cast<std::size_t>(g)] * acc;
        return acc;
    };

    auto & rels = _source->presentation().relations;
    for (std::size_t r = 0; r < rels.size(); ++r) {
        auto acc = _target->zero();
        for (auto & t : rels[r])
            acc = acc + scale(t.coeff, eval(t.monomial));
        if (! acc.is_zero())
            fail(ErrorCode::RelationNotPreserved, "relation " + std::to_string(r + 1) + " of the source does not map to zero");
    }

    _basis_images.resize(static_cast<std::size_t>(_source->top_degree() + 1));
    for (int d = 0; d <= _source->top_degree(); ++d)
        for (int i = 0; i < _source->rank(d); ++i) {
            auto & l = _source->label(d, i);
            _basis_images[static_cast<std::size_t>(d)].push_back(scale(l.sign, eval(l.monomial)));
        }

    // The source vanishes above its top degree; the images must as well.
    for (int g = 0; g < _source->generator_count(); ++g)
        for (int d = 0; d <= _source->top_degree(); ++d) {
            int e = d + _source->generator(g).degree;
            if (e <= _source->top_degree() || e > _target->top_degree())
                continue;
            for (int i = 0; i < _source->rank(d); ++i)
                if (! (_images[static_cast<std::size_t>(g)] * _basis_images[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)]).is_zero())
                    fail(ErrorCode::RelationNotPreserved, "source truncation above degree " + std::to_string(_source->top_degree()) + " is not preserved");
        }

    // Multiplicativity on generator pairs.
    for (int g = 0; g < _source->generator_count(); ++g)
        for (int h = 0; h < _source->generator_count(); ++h) {
            auto lhs = apply(_source->generator_element(g) * _source->generator_element(h));
            auto rhs = _images[static_cast<std::size_t>(g)] * _images[static_cast<std::size_t>(h)];
            if (_source->generator(g).degree + _source->generator(h).degree <= _source->top_degree() && ! (lhs == rhs))
                fail(ErrorCode::RelationNotPreserved, "homomorphism is not multiplicative on generators");
        }
}

auto RingHom::identity(const RingPtr & ring) -> RingHom
{
    std::vector<RingElement> images;
    for (int g = 0; g < ring->generator_count(); ++g)
        images.push_back(ring->generator_element(g));
    return RingHom{ring, ring, std::move(images)};
}

auto RingHom::apply(const RingElement & a) const -> RingElement
{
    if (a.ring() != _source)
        fail(ErrorCode::RingMismatch, "element is not in the source ring");
    auto out = _target->zero();
    for (int d = 0; d <= _source->top_degree(); ++d)
        for (int i = 0; i < _source->rank(d); ++i) {
            auto & c = a.component(d)[static_cast<std::size_t>(i)];
            if (sgn(c) != 0)
                out = out + scale(c, _basis_images[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)]);
        }
    return out;
}

auto RingHom::apply(const Polynomial & p) const -> RingElement
{
    return apply(_source->reduce(p));
}

auto RingHom::matrix(int d) const -> linalg::DenseMatrix
{
    linalg::DenseMatrix m(static_cast<std::size_t>(_target->rank(d)), std::vector<Rational>(static_cast<std::size_t>(_source->rank(d)), Rational{0}));
    for (int i = 0; i < _source->rank(d); ++i) {
        auto & img = _basis_images[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
        auto & comp = img.component(d);
        for (std::size_t r = 0; r < comp.size(); ++r)
            m[r][static_cast<std::size_t>(i)] = comp[r];
    }
    return m;
}

}
