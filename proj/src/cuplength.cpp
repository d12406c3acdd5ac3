#include <tcpair/cuplength.hpp>
#include <tcpair/error.hpp>

#include <algorithm>
#include <numeric>

namespace tcpair::cuplength {

using rings::GradedRing;
using rings::tensor_element;

namespace {
    void require_tensor_of(const RingPtr & tensor, const RingHom & hom)
    {
        if (! tensor->is_tensor() || tensor->left() != hom.source() || tensor->right() != hom.target())
            fail(ErrorCode::RingMismatch, "tensor ring must be built from the source and target of the homomorphism");
    }

    auto describe(const RingElement & e) -> std::string
    {
        auto & ring = *e.ring();
        auto p = ring.to_polynomial(e);
        if (p.empty())
            return "0";
        std::string out;
        for (std::size_t t = 0; t < p.size(); ++t) {
            auto c = p[t].coeff;
            if (t > 0)
                out += sgn(c) < 0 ? " - " : " + ";
            else if (sgn(c) < 0)
                out += "-";
            auto a = abs(c);
            std::string mono;
            for (int g = 0; g < ring.generator_count(); ++g) {
                int ex = p[t].monomial[static_cast<std::size_t>(g)];
                if (ex == 0)
                    continue;
                if (! mono.empty())
                    mono += "*";
                mono += ring.generator(g).name;
                if (ex > 1)
                    mono += "^" + std::to_string(ex);
            }
            if (mono.empty())
                out += to_string(Rational{a});
            else
                out += (a == 1 ? "" : to_string(Rational{a}) + "*") + mono;
        }
        return out;
    }
}

auto evaluate(const RingHom & hom, const RingElement & z) -> RingElement
{
    auto & tensor = z.ring();
    require_tensor_of(tensor, hom);
    auto & left = *tensor->left();
    auto & right = tensor->right();
    auto out = right->zero();
    for (int d = 0; d <= tensor->top_degree(); ++d)
        for (int i = 0; i < tensor->rank(d); ++i) {
            auto & c = z.component(d)[static_cast<std::size_t>(i)];
            if (sgn(c) == 0)
                continue;
            auto [pa, ia, ib] = tensor->slot(d, i);
            auto image = hom.apply(left.basis_element(pa, ia));
            out = out + scale(c, image * right->basis_element(d - pa, ib));
        }
    return out;
}

auto zero_divisor_generators(const RingPtr & tensor, const RingHom & hom) -> ZeroDivisorSet
{
    require_tensor_of(tensor, hom);
    auto & source = hom.source();
    auto & target = hom.target();
    ZeroDivisorSet out{tensor, hom, {}};

    auto add = [&](RingElement e, ZeroDivisorOrigin origin, std::string label) {
        if (e.is_zero())
            return;
        for (auto & existing : out.generators)
            if (existing.element == e)
                return;
        if (! evaluate(hom, e).is_zero())
            fail(ErrorCode::NotAZeroDivisor, "element " + label + " does not evaluate to zero");
        int degree = e.degree().value();
        out.generators.push_back(ZeroDivisor{std::move(e), origin, std::move(label), degree});
    };

    for (int g = 0; g < source->generator_count(); ++g) {
        auto x = source->generator_element(g);
        auto e = tensor_element(tensor, x, target->one()) - tensor_element(tensor, source->one(), hom.image(g));
        add(std::move(e), ZeroDivisorOrigin::Difference, source->generator(g).name + "⊗1 - 1⊗ι*(" + source->generator(g).name + ")");
    }

    for (int d = 1; d <= std::min(source->top_degree(), tensor->top_degree()); ++d) {
        if (source->rank(d) == 0)
            continue;
        auto kernel = linalg::nullspace(source->field(), hom.matrix(d), source->rank(d));
        for (auto & v : kernel) {
            auto comps = source->zero().components();
            comps[static_cast<std::size_t>(d)] = v;
            RingElement kappa{source, std::move(comps)};
            auto label = "(" + describe(kappa) + ")⊗1";
            add(tensor_element(tensor, kappa, target->one()), ZeroDivisorOrigin::Kernel, std::move(label));
        }
    }
    return out;
}

auto default_max_factors(const RingPtr & tensor) -> int
{
    bool even = true;
    for (int g = 0; g < tensor->generator_count(); ++g)
        even = even && tensor->generator(g).degree % 2 == 0;
    return even ? tensor->top_degree() / 2 : tensor->top_degree();
}

auto cuplength_lower_bound(const ZeroDivisorSet & z, int max_factors, std::optional<std::size_t> node_budget) -> CupLengthCertificate
{
    auto & tensor = z.tensor;
    const int top = tensor->top_degree();
    std::vector<std::size_t> order(z.generators.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return z.generators[a].degree > z.generators[b].degree; });

    CupLengthCertificate best{0, {}, {}, tensor->one(), true, std::nullopt};
    std::vector<std::size_t> chosen;
    std::size_t nodes = 0;
    bool stop = false;

    // Depth-first over non-decreasing positions in `order`, i.e. multisets.
    auto dfs = [&](auto & self, std::size_t start, const RingElement & product, int degree) -> void {
        if (static_cast<int>(chosen.size()) > best.k) {
            best.k = static_cast<int>(chosen.size());
            best.product = product;
            best.factors.clear();
            best.labels.clear();
            for (auto c : chosen) {
                best.factors.push_back(z.generators[c].element);
                best.labels.push_back(z.generators[c].label);
            }
        }
        if (best.k >= max_factors)
            stop = true;
        if (stop)
            return;
        for (std::size_t pos = start; pos < order.size() && ! stop; ++pos) {
            auto & zd = z.generators[order[pos]];
            if (degree + zd.degree > top)
                continue;
            if (node_budget && nodes >= *node_budget) {
                best.complete = false;
                stop = true;
                return;
            }
            ++nodes;
            auto next = product * zd.element;
            if (next.is_zero())
                continue;
            chosen.push_back(order[pos]);
            self(self, pos, next, degree + zd.degree);
            chosen.pop_back();
        }
    };
    dfs(dfs, 0, tensor->one(), 0);
    return best;
}

auto symplectic_fastpath(const RingPtr & tensor, const RingHom & hom, const RingElement & omega_x, const RingElement & omega_y, int n, int m) -> CupLengthCertificate
{
    require_tensor_of(tensor, hom);
    if (omega_x.ring() != hom.source() || omega_y.ring() != hom.target())
        fail(ErrorCode::RingMismatch, "symplectic classes must live in the source and target rings");
    if (n < 0 || m < 0)
        fail(ErrorCode::PreconditionFailed, "exponents must be non-negative");
    if (! tensor->field().is_rationals())
        fail(ErrorCode::PreconditionFailed, "the symplectic argument runs over Q");
    if (! (hom.apply(omega_x) == omega_y))
        fail(ErrorCode::PullbackMismatch, "ι*(ωX) differs from ωY");
    auto top_x = rings::power(omega_x, n);
    auto top_y = rings::power(omega_y, m);
    if (top_x.is_zero())
        fail(ErrorCode::TopPowerVanishes, "ωX^" + std::to_string(n) + " vanishes");
    if (top_y.is_zero())
        fail(ErrorCode::TopPowerVanishes, "ωY^" + std::to_string(m) + " vanishes");

    auto factor = tensor_element(tensor, omega_x, hom.target()->one()) - tensor_element(tensor, hom.source()->one(), omega_y);
    auto product = rings::power(factor, n + m);
    auto base = tensor_element(tensor, top_x, top_y);

    Rational expected = Rational{binomial(static_cast<unsigned long>(n + m), static_cast<unsigned long>(m))} * (m % 2 == 0 ? 1 : -1);
    std::optional<Rational> coefficient;
    for (int d = 0; d <= tensor->top_degree() && ! coefficient; ++d)
        for (std::size_t i = 0; i < base.component(d).size(); ++i)
            if (sgn(base.component(d)[i]) != 0) {
                coefficient = product.component(d)[i] / base.component(d)[i];
                break;
            }
    if (! coefficient || ! (product == rings::scale(*coefficient, base)) || *coefficient != expected || product.is_zero())
        fail(ErrorCode::VerificationFailed, "fast-path product is not (-1)^m C(n+m, m) ωX^n⊗ωY^m");

    CupLengthCertificate c{n + m, std::vector<RingElement>(static_cast<std::size_t>(n + m), factor), std::vector<std::string>(static_cast<std::size_t>(n + m), "ωX⊗1 - 1⊗ωY"), product, true, coefficient};
    return c;
}

auto verify_certificate(const CupLengthCertificate & c) -> bool
{
    if (static_cast<int>(c.factors.size()) != c.k)
        return false;
    auto acc = c.product.ring()->one();
    for (auto & f : c.factors) {
        if (f.ring() != c.product.ring())
            return false;
        acc = acc * f;
    }
    return acc == c.product && ! c.product.is_zero();
}

auto to_json(const CupLengthCertificate & c) -> rings::Json
{
    rings::Json factors = rings::Json::array();
    for (auto & f : c.factors)
        factors.push_back(rings::to_json(f));
    return rings::Json{{"k", c.k}, {"factors", factors}, {"product", rings::to_json(c.product)}, {"bound", "TC >= " + std::to_string(c.bound())}};
}

}
