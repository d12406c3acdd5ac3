#include <tcpair/bounds.hpp>
#include <tcpair/error.hpp>
#include <tcpair/families.hpp>

#include <algorithm>

namespace tcpair::bounds {

using cuplength::CupLengthCertificate;
using rings::GradedRing;
using rings::RingElement;
using rings::RingHom;
using rings::RingPtr;

namespace {
    const std::string cite_cup_length = "a non-zero product of k zero-divisors in H*(X)⊗H*(Y) forces TC(X,Y) > k";
    const std::string cite_symplectic = "for a closed simply-connected symplectic X of dimension 2n with symplectic Y ⊆ X of dimension 2m and ι*[ωX] = [ωY], "
                                        "([ωX]⊗1 − 1⊗[ωY])^(n+m) = (−1)^m C(n+m,m) [ωX]^n⊗[ωY]^m is non-zero";
    const std::string cite_dim_conn = "TC(X,Y) < (dim X + dim Y + 1)/(s+1) + 1 when π_j(X) = 0 for j ≤ s";

    auto at_least(int v) -> std::string
    {
        return ">= " + std::to_string(v);
    }

    auto at_most(int v) -> std::string
    {
        return "<= " + std::to_string(v);
    }

    auto zero_hom(const RingPtr & source, const RingPtr & target) -> RingHom
    {
        return RingHom{source, target, std::vector<RingElement>(static_cast<std::size_t>(source->generator_count()), target->zero())};
    }

    /// Runs the basic zero-divisor search and records its certificate.
    auto search(BoundReport & report, const RingHom & hom, const std::string & what) -> CupLengthCertificate
    {
        auto tensor = GradedRing::tensor(hom.source(), hom.target());
        auto z = cuplength::zero_divisor_generators(tensor, hom);
        auto cert = cuplength::cuplength_lower_bound(z, cuplength::default_max_factors(tensor));
        if (cert.k > 0 && ! cuplength::verify_certificate(cert))
            fail(ErrorCode::VerificationFailed, "cup-length certificate does not re-multiply to its product");
        report.raise_lower(cert.bound(), Step{"cup-length", cite_cup_length + " (" + what + ", k = " + std::to_string(cert.k) + ")", at_least(cert.bound())});
        report.certificates.push_back(cert);
        return cert;
    }

    /// Records a rule that fixes the value from both sides.
    void pin(BoundReport & r, int value, Step step)
    {
        r.lower = std::max(r.lower, value);
        r.upper = r.upper ? std::min(*r.upper, value) : value;
        r.steps.push_back(std::move(step));
    }

    void append(BoundReport & into, const BoundReport & from)
    {
        into.lower = std::max(into.lower, from.lower);
        if (from.upper)
            into.upper = into.upper ? std::min(*into.upper, *from.upper) : *from.upper;
        into.steps.insert(into.steps.end(), from.steps.begin(), from.steps.end());
    }
}

void BoundReport::raise_lower(int value, Step step)
{
    lower = std::max(lower, value);
    steps.push_back(std::move(step));
}

void BoundReport::cap_upper(int value, Step step)
{
    upper = upper ? std::min(*upper, value) : value;
    steps.push_back(std::move(step));
}

void BoundReport::note(Step step)
{
    steps.push_back(std::move(step));
}

void BoundReport::settle()
{
    if (upper && lower > *upper)
        fail(ErrorCode::InconsistentFacts, "lower bound " + std::to_string(lower) + " exceeds upper bound " + std::to_string(*upper));
    exact = upper.has_value() && lower == *upper;
}

auto to_json(const BoundReport & r) -> Json
{
    Json steps = Json::array();
    for (auto & s : r.steps)
        steps.push_back(Json{{"rule", s.rule}, {"cite", s.cite}, {"value", s.value}});
    return Json{{"lower", r.lower}, {"upper", r.upper ? Json(*r.upper) : Json(nullptr)}, {"exact", r.exact}, {"steps", steps}};
}

auto upper_from_dim_conn(const SpaceFacts & x, int dim_y) -> int
{
    if (x.dim < 0 || dim_y < 0 || x.connectivity < 0)
        fail(ErrorCode::PreconditionFailed, "dimensions and connectivity must be non-negative");
    // Largest integer below N/d + 1 is ⌈N/d⌉.
    Rational bound{x.dim + dim_y + 1, x.connectivity + 1};
    bound.canonicalize();
    bound += 1;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
    if (Rational{fl} == bound)
        fl -= 1;
    return static_cast<int>(fl.get_si());
}

auto chain_rules(const PairFacts & f) -> BoundReport
{
    BoundReport r;
    auto & x = f.x;
    if (x.dim < 0 || x.connectivity < 0 || f.y.dim < 0 || f.y.connectivity < 0)
        fail(ErrorCode::InconsistentFacts, "dimensions and connectivity must be non-negative");
    if (x.contractible && x.known_cat && *x.known_cat != 1)
        fail(ErrorCode::InconsistentFacts, "a contractible space has category 1");
    if (x.contractible) {
        pin(r, 1, Step{"contractible X", "TC(X,Y) = 1 if and only if X is contractible", "= 1"});
    }
    else if (f.y_contractible_in_x && x.known_cat) {
        pin(r, *x.known_cat, Step{"Y contractible in X", "if Y is contractible in X then TC(X,Y) = cat(X)", "= " + std::to_string(*x.known_cat)});
    }
    else if (x.topological_group && x.known_cat) {
        pin(r, *x.known_cat, Step{"topological group", "TC(G,H) = cat(G) for a path-connected topological group G and non-empty H", "= " + std::to_string(*x.known_cat)});
    }
    else if (x.known_cat) {
        r.raise_lower(*x.known_cat, Step{"category", "cat(X) ≤ TC(X,Y)", at_least(*x.known_cat)});
    }
    if (x.known_tc)
        r.cap_upper(*x.known_tc, Step{"absolute TC", "TC(X,Y) ≤ TC(X)", at_most(*x.known_tc)});
    r.settle();
    return r;
}

auto catalog_sphere_pair(int n, int m) -> BoundReport
{
    if (! (n > m && m > 0))
        fail(ErrorCode::PreconditionFailed, "sphere pair catalog needs n > m > 0");
    auto field = Field::rationals();
    auto x = rings::build_truncated(n, 2, field, "x");
    auto y = rings::build_truncated(m, 2, field, "y");

    BoundReport r;
    search(r, zero_hom(x, y), "H*(S^" + std::to_string(n) + ") ⊗ H*(S^" + std::to_string(m) + ")");
    PairFacts facts{SpaceFacts{n, n - 1, false, 2, std::nullopt, false}, SpaceFacts{m, m - 1, false, 2, std::nullopt, false}, true};
    r.note(Step{"category", "cat(S^n) = 2", "= 2"});
    append(r, chain_rules(facts));
    planners::SpherePairPlanner planner{n, m};
    r.cap_upper(planner.rule_count(), Step{"motion planner", "explicit two-rule planner: contract x to e1 through one of two caps, then follow a fixed contraction of S^m in S^n", at_most(2)});
    r.settle();
    return r;
}

auto catalog_torus(int n) -> BoundReport
{
    if (n < 1)
        fail(ErrorCode::PreconditionFailed, "torus catalog needs n >= 1");
    auto field = Field::rationals();
    auto x = rings::build_exterior(n, field, "x");
    auto y = rings::build_point(field);

    BoundReport r;
    auto cert = search(r, zero_hom(x, y), "H*(T^" + std::to_string(n) + ") with Y a point");
    if (cert.k != n)
        fail(ErrorCode::VerificationFailed, "torus cup-length search returned k = " + std::to_string(cert.k));
    r.note(Step{"category", "cat(T^n) = n+1", "= " + std::to_string(n + 1)});
    PairFacts facts{SpaceFacts{n, 0, false, n + 1, std::nullopt, true}, SpaceFacts{0, 0, false, std::nullopt, std::nullopt, false}, false};
    append(r, chain_rules(facts));
    r.settle();
    return r;
}

auto catalog_wedge(const std::vector<int> & dims, int m) -> BoundReport
{
    const int n = static_cast<int>(dims.size());
    if (n < 2 || m < 0 || m >= n)
        fail(ErrorCode::PreconditionFailed, "wedge catalog needs at least two spheres and 0 <= m < n");
    for (int a : dims)
        if (a < 1)
            fail(ErrorCode::PreconditionFailed, "sphere dimensions must be >= 1");
    auto field = Field::rationals();
    auto x = rings::build_wedge(dims, field, "g");
    int dim = *std::max_element(dims.begin(), dims.end());
    int conn = *std::min_element(dims.begin(), dims.end()) - 1;

    BoundReport r;
    r.note(Step{"category", "a wedge of spheres has category 2", "= 2"});
    if (m == 0) {
        auto y = rings::build_point(field);
        search(r, zero_hom(x, y), "wedge with Y the wedge point");
        PairFacts facts{SpaceFacts{dim, conn, false, 2, std::nullopt, false}, SpaceFacts{0, 0, true, 1, std::nullopt, false}, true};
        append(r, chain_rules(facts));
        r.settle();
        return r;
    }

    std::vector<int> sub(dims.begin(), dims.begin() + m);
    auto y = rings::build_wedge(sub, field, "g");
    std::vector<RingElement> images;
    for (int i = 0; i < n; ++i)
        images.push_back(i < m ? y->generator_element(i) : y->zero());
    RingHom hom{x, y, images};

    if (m > 1) {
        // (g_{m+1}⊗1)(g_1⊗1 − 1⊗g_1) = −g_{m+1}⊗g_1.
        auto tensor = GradedRing::tensor(x, y);
        auto kernel_factor = rings::tensor_element(tensor, x->generator_element(m), y->one());
        auto difference = rings::tensor_element(tensor, x->generator_element(0), y->one()) - rings::tensor_element(tensor, x->one(), y->generator_element(0));
        for (auto * f : {&kernel_factor, &difference})
            if (! cuplength::evaluate(hom, *f).is_zero())
                fail(ErrorCode::NotAZeroDivisor, "wedge certificate factor is not a zero-divisor");
        auto product = kernel_factor * difference;
        auto expected = -rings::tensor_element(tensor, x->generator_element(m), y->generator_element(0));
        if (! (product == expected) || product.is_zero())
            fail(ErrorCode::VerificationFailed, "wedge certificate product differs from −g_{m+1}⊗g_1");
        CupLengthCertificate cert{2, {kernel_factor, difference}, {"g" + std::to_string(m + 1) + "⊗1", "g1⊗1 - 1⊗g1"}, product, true, std::nullopt};
        r.raise_lower(3, Step{"cup-length", cite_cup_length + " ((g" + std::to_string(m + 1) + "⊗1)(g1⊗1 − 1⊗g1) = −g" + std::to_string(m + 1) + "⊗g1, k = 2)", at_least(3)});
        r.certificates.push_back(cert);
    }
    else {
        search(r, hom, "wedge relative to its first sphere");
    }

    planners::WedgePairPlanner planner{dims, m};
    r.cap_upper(planner.rule_count(), Step{"motion planner", "explicit three-rule planner built from contractions of the complement of the antipodal points, cap contractions and meridians", at_most(3)});
    PairFacts facts{SpaceFacts{dim, conn, false, 2, std::nullopt, false}, SpaceFacts{dim, conn, false, std::nullopt, std::nullopt, false}, false};
    append(r, chain_rules(facts));
    r.settle();
    if (m == 1) {
        r.exact = false;
        r.note(Step{"range", "the closed form TC = 3 is established for 1 < m < n; for m = 1 only the computed bounds are reported", "range"});
    }
    return r;
}

auto catalog_cp_pair(int n, int m) -> BoundReport
{
    if (n < m)
        std::swap(n, m);
    if (m < 0)
        fail(ErrorCode::PreconditionFailed, "ℂP pair catalog needs n >= m >= 0");
    auto field = Field::rationals();
    auto x = n == 0 ? rings::build_point(field) : rings::build_truncated(2, n + 1, field, "x");
    auto y = m == 0 ? rings::build_point(field) : rings::build_truncated(2, m + 1, field, "y");
    std::vector<RingElement> images;
    if (n > 0)
        images.push_back(m > 0 ? y->generator_element(0) : y->zero());
    RingHom hom{x, y, images};
    auto omega_x = n > 0 ? x->generator_element(0) : x->zero();
    auto omega_y = m > 0 ? y->generator_element(0) : y->zero();

    BoundReport r;
    if (n == 0) {
        append(r, chain_rules(PairFacts{SpaceFacts{0, 0, true, 1, std::nullopt, false}, SpaceFacts{0, 0, true, 1, std::nullopt, false}, true}));
        r.settle();
        return r;
    }
    auto tensor = GradedRing::tensor(x, y);
    auto cert = cuplength::symplectic_fastpath(tensor, hom, omega_x, omega_y, n, m);
    r.note(Step{"pullback", "ι*(x) = y for ℂP^" + std::to_string(m) + " ⊆ ℂP^" + std::to_string(n), "verified"});
    r.raise_lower(cert.bound(), Step{"symplectic cup-length", cite_symplectic + " (coefficient " + to_string(*cert.coefficient) + ")", at_least(cert.bound())});
    r.certificates.push_back(cert);
    int upper = upper_from_dim_conn(SpaceFacts{2 * n, 1, false, std::nullopt, std::nullopt, false}, 2 * m);
    r.cap_upper(upper, Step{"dimension and connectivity", cite_dim_conn + " (s = 1)", at_most(upper)});
    r.settle();
    return r;
}

auto catalog_polygon(const lengths::LengthVector & l, const std::optional<lengths::OrderedSetPartition> & partition) -> BoundReport
{
    auto field = Field::rationals();
    auto x = rings::build_polygon(l, field);
    const int n = l.size();
    BoundReport r;

    std::optional<rings::PolygonRing> y;
    std::optional<RingHom> hom;
    int m = n;
    if (partition) {
        auto ident = lengths::edge_identify(l, *partition);
        if (! ident.nondegenerate)
            fail(ErrorCode::DegenerateLength, "edge-identified vector " + lengths::format_lengths(ident.lengths) + " is degenerate");
        y = rings::build_polygon(ident.lengths, field);
        hom = rings::polygon_inclusion_hom(x, *y, ident.phi);
        m = partition->part_count();
        r.note(Step{"edge identification", "ℓ^P = " + lengths::format_lengths(ident.lengths) + " from P = " + lengths::format_partition(*partition) + "; ι*(c_j(ℓ)) = c_φ(j)(ℓ^P)",
            "m = " + std::to_string(m)});
    }
    else {
        y = x;
        hom = RingHom::identity(x.ring);
    }

    Rational lambda{l.common_denominator()};
    auto omega_x = rings::symplectic_class(x, lambda);
    auto omega_y = rings::symplectic_class(*y, lambda);
    if (! (hom->apply(omega_x) == omega_y))
        fail(ErrorCode::PullbackMismatch, "ι*[ω] differs from [ω_P]");
    std::string scaled = lambda == 1 ? "" : " (ℓ scaled by " + to_string(lambda) + ")";
    if (partition)
        r.note(Step{"pullback", "ι*[ω] = Σ ℓ_i c_φ(i)(ℓ^P) = [ω_P], with [ω] = Σ ℓ_i c_i(ℓ) for integral ℓ" + scaled, "verified"});
    else
        r.note(Step{"pullback", "Y = X with ι the identity, [ω] = Σ ℓ_i c_i(ℓ) for integral ℓ" + scaled, "verified"});

    auto tensor = GradedRing::tensor(x.ring, y->ring);
    auto cert = cuplength::symplectic_fastpath(tensor, *hom, omega_x, omega_y, n - 3, m - 3);
    r.raise_lower(cert.bound(), Step{"symplectic cup-length", cite_symplectic + " (n = " + std::to_string(n - 3) + ", m = " + std::to_string(m - 3) + ", coefficient " + to_string(*cert.coefficient) + ")",
                                    at_least(cert.bound())});
    r.certificates.push_back(cert);

    int upper = upper_from_dim_conn(SpaceFacts{2 * (n - 3), 1, false, std::nullopt, std::nullopt, false}, 2 * (m - 3));
    r.cap_upper(upper, Step{"dimension and connectivity", cite_dim_conn + " (N(ℓ) is simply connected, s = 1)", at_most(upper)});
    r.settle();
    return r;
}

auto rp_pair_bounds(int n, int m, const std::vector<planners::BilinearMap> & witnesses, std::optional<PlannerCheck> check) -> BoundReport
{
    if (! (1 < m && m < n))
        fail(ErrorCode::PreconditionFailed, "ℝP pair bounds need 1 < m < n");
    auto field = Field::prime(2);
    auto x = rings::build_truncated(1, n + 1, field, "x");
    auto y = rings::build_truncated(1, m + 1, field, "y");
    RingHom hom{x, y, {y->generator_element(0)}};

    BoundReport r;
    search(r, hom, "over F2, H*(ℝP^" + std::to_string(n) + ") ⊗ H*(ℝP^" + std::to_string(m) + ")");
    r.raise_lower(n + 1, Step{"category", "cat(ℝPⁿ) ≤ TC(ℝPⁿ,ℝPᵐ), and it is well-known that cat(ℝPⁿ) = n+1", at_least(n + 1)});

    std::vector<planners::BilinearMap> maps{planners::build_polymul_map(n, m)};
    maps.insert(maps.end(), witnesses.begin(), witnesses.end());
    std::optional<planners::BilinearMap> best;
    for (auto & f : maps) {
        if (f.p != n + 1 || f.q != m + 1)
            fail(ErrorCode::PreconditionFailed, "witness has domain ℝ^" + std::to_string(f.p) + " × ℝ^" + std::to_string(f.q) + ", expected ℝ^" + std::to_string(n + 1) + " × ℝ^" + std::to_string(m + 1));
        auto positive = planners::diagonal_positivize(f);
        std::string certificate = f.certified_nonsingular ? f.origin : f.origin + "; non-singularity sampled, not certified";
        r.cap_upper(f.k, Step{"non-singular map", "a non-singular map ℝ^(n+1) × ℝ^(m+1) → ℝ^k yields a k-rule planner, so TC(ℝPⁿ,ℝPᵐ) ≤ k (" + certificate + ")", at_most(f.k)});
        if (! best || positive.k < best->k)
            best = positive;
    }
    r.note(Step{"axial maps", "equivalently, TC(ℝPⁿ,ℝPᵐ) is the least k admitting an axial map of type (n,m,k−1); the witnesses here are non-singular maps, each of which induces such an axial map", "commentary"});

    if (check) {
        planners::ProjectivePairPlanner planner{*best};
        auto report = planners::verify_planner(planner, check->samples, check->delta, check->seed);
        r.verification = report;
        if (! report.passed())
            fail(ErrorCode::VerificationFailed, std::to_string(planner.rule_count()) + "-rule planner failed verification (" + std::to_string(report.cover_failures) + " cover failures)");
        r.note(Step{"planner verification",
            std::to_string(planner.rule_count()) + "-rule planner checked on " + std::to_string(report.n) + " seeded queries (seed " + std::to_string(report.seed) + ")",
            "cover_failures = 0, endpoint_max_err = " + nlohmann::json(report.endpoint_max_err).dump()});
    }
    r.settle();
    r.note(Step{"provenance", "computed here from an F2 cup-length search and a non-singular map witness; not a tabulated value", "artifact-derived"});
    return r;
}

}
