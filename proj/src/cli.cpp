#include <tcpair/cli.hpp>
#include <tcpair/cuplength.hpp>
#include <tcpair/error.hpp>
#include <tcpair/field.hpp>
#include <tcpair/planners.hpp>
#include <tcpair/ring_json.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace tcpair::cli {

using Json = nlohmann::ordered_json;

namespace {

    auto split(const std::string & text, char sep) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        std::string cur;
        std::istringstream in(text);
        while (std::getline(in, cur, sep))
            out.push_back(cur);
        return out;
    }

    auto parse_int(const std::string & token, const std::string & what) -> int
    {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(token, &used);
        }
        catch (const std::exception &) {
            fail(ErrorCode::ParseError, what + ": expected an integer, got '" + token + "'");
        }
        if (used != token.size())
            fail(ErrorCode::ParseError, what + ": expected an integer, got '" + token + "'");
        return v;
    }

    auto parse_ints(const std::string & text, const std::string & what) -> std::vector<int>
    {
        std::vector<int> out;
        for (auto & t : split(text, ','))
            out.push_back(parse_int(t, what));
        if (out.empty())
            fail(ErrorCode::ParseError, what + ": expected a comma-separated list");
        return out;
    }

    auto parse_point(const std::string & text, const std::string & what) -> planners::Vec
    {
        planners::Vec out;
        for (auto & t : split(text, ',')) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(t, &used);
            }
            catch (const std::exception &) {
                fail(ErrorCode::ParseError, what + ": expected a number, got '" + t + "'");
            }
            if (used != t.size())
                fail(ErrorCode::ParseError, what + ": expected a number, got '" + t + "'");
            out.push_back(v);
        }
        if (out.empty())
            fail(ErrorCode::ParseError, what + ": expected comma-separated coordinates");
        return out;
    }

    auto read_json_file(const std::string & path) -> Json
    {
        std::ifstream in(path);
        if (! in)
            fail(ErrorCode::ParseError, "cannot read '" + path + "'");
        try {
            return Json::parse(in);
        }
        catch (const nlohmann::json::parse_error & e) {
            fail(ErrorCode::ParseError, "'" + path + "' is not valid JSON: " + e.what());
        }
    }

    auto member(const Json & j, const std::string & key, const std::string & pointer) -> const Json &
    {
        if (! j.is_object())
            fail(ErrorCode::SchemaError, (pointer.empty() ? "/" : pointer) + ": expected an object");
        if (! j.contains(key))
            fail(ErrorCode::SchemaError, (pointer.empty() ? "/" : pointer) + ": missing key '" + key + "'");
        return j.at(key);
    }

    /// {"p", "q", "k", "coefficients": [[i, j, r, "c"], ...]} with 1-based indices.
    auto load_bilinear_map(const std::string & path) -> planners::BilinearMap
    {
        auto j = read_json_file(path);
        auto dim = [&](const char * key) {
            auto & v = member(j, key, "");
            if (! v.is_number_integer() || v.get<int>() < 1)
                fail(ErrorCode::SchemaError, std::string("/") + key + ": expected a positive integer");
            return v.get<int>();
        };
        planners::BilinearMap f;
        f.p = dim("p");
        f.q = dim("q");
        f.k = dim("k");
        f.c.assign(static_cast<std::size_t>(f.p * f.q * f.k), Rational{0});
        f.origin = "user-supplied map from " + path;
        auto & coeffs = member(j, "coefficients", "");
        if (! coeffs.is_array())
            fail(ErrorCode::SchemaError, "/coefficients: expected a list of [i, j, r, coeff] entries");
        for (std::size_t e = 0; e < coeffs.size(); ++e) {
            auto pointer = "/coefficients/" + std::to_string(e);
            auto & t = coeffs[e];
            if (! t.is_array() || t.size() != 4 || ! t[0].is_number_integer() || ! t[1].is_number_integer() || ! t[2].is_number_integer())
                fail(ErrorCode::SchemaError, pointer + ": expected [i, j, r, coeff]");
            int i = t[0].get<int>(), jj = t[1].get<int>(), r = t[2].get<int>();
            if (i < 1 || i > f.p || jj < 1 || jj > f.q || r < 1 || r > f.k)
                fail(ErrorCode::SchemaError, pointer + ": index out of range");
            Rational c;
            if (t[3].is_string()) {
                try {
                    c = parse_rational(t[3].get<std::string>());
                }
                catch (const Error & err) {
                    fail(ErrorCode::SchemaError, pointer + "/3: " + err.what());
                }
            }
            else if (t[3].is_number_integer())
                c = Rational{t[3].get<long>()};
            else
                fail(ErrorCode::SchemaError, pointer + "/3: expected a rational literal string");
            f.c[static_cast<std::size_t>(((i - 1) * f.q + (jj - 1)) * f.k + (r - 1))] = c;
        }
        return f;
    }

    struct Options
    {
        bool json = false;
        std::string field;
        std::uint64_t seed = 0;
        int samples = 10000;
        double delta = 1e-3;

        std::string lengths;
        std::string partition;
        int n = -1;
        int m = -1;
        std::string dims;
        std::vector<std::string> witnesses;
        std::vector<std::string> witness_files;
        bool no_verify = false;
        std::string spec;
        int max_factors = -1;
        long node_budget = -1;
        std::string planner;
        std::string x;
        std::string y;
    };

    void require_rationals(const Options & o, const std::string & command)
    {
        if (! o.field.empty() && ! parse_field(o.field).is_rationals())
            fail(ErrorCode::PreconditionFailed, command + " uses the symplectic class and needs --field Q");
    }

    void require_set(int v, const std::string & flag)
    {
        if (v < 0)
            fail(ErrorCode::PreconditionFailed, flag + " is required");
    }

    auto witnesses_for(const Options & o, int n, int m) -> std::vector<planners::BilinearMap>
    {
        std::vector<planners::BilinearMap> out;
        for (auto & w : o.witnesses) {
            if (w == "quaternion")
                out.push_back(planners::build_quaternion_map(n, m));
            else if (w == "polymul")
                out.push_back(planners::build_polymul_map(n, m));
            else
                fail(ErrorCode::ParseError, "unknown witness '" + w + "' (expected quaternion or polymul)");
        }
        for (auto & path : o.witness_files)
            out.push_back(load_bilinear_map(path));
        return out;
    }

    auto projective_planner(const Options & o) -> std::unique_ptr<planners::ProjectivePairPlanner>
    {
        require_set(o.n, "--n");
        require_set(o.m, "--m");
        std::optional<planners::BilinearMap> best;
        std::vector<planners::BilinearMap> maps{planners::build_polymul_map(o.n, o.m)};
        for (auto & w : witnesses_for(o, o.n, o.m))
            maps.push_back(w);
        for (auto & f : maps) {
            if (f.p != o.n + 1 || f.q != o.m + 1)
                fail(ErrorCode::PreconditionFailed, "witness domain does not match --n and --m");
            if (! best || f.k < best->k)
                best = f;
        }
        return std::make_unique<planners::ProjectivePairPlanner>(planners::diagonal_positivize(*best, o.seed));
    }

    auto make_planner(const Options & o) -> std::unique_ptr<planners::Planner>
    {
        if (o.planner == "sphere-pair") {
            require_set(o.n, "--n");
            require_set(o.m, "--m");
            return std::make_unique<planners::SpherePairPlanner>(o.n, o.m);
        }
        if (o.planner == "wedge") {
            if (o.dims.empty())
                fail(ErrorCode::PreconditionFailed, "--dims is required");
            require_set(o.m, "--m");
            return std::make_unique<planners::WedgePairPlanner>(parse_ints(o.dims, "--dims"), o.m);
        }
        return projective_planner(o);
    }

    /// Wedge points are "i:c1,c2,..." with i the 1-based sphere, or "0" for the wedge point.
    auto parse_planner_point(const planners::Planner & planner, const std::string & text, const std::string & what) -> planners::Vec
    {
        if (auto * w = dynamic_cast<const planners::WedgePairPlanner *>(&planner)) {
            if (text == "0")
                return w->wedge_point();
            auto colon = text.find(':');
            if (colon == std::string::npos)
                fail(ErrorCode::ParseError, what + ": expected 'sphere:coords' or '0'");
            int sphere = parse_int(text.substr(0, colon), what);
            if (sphere < 1 || sphere > static_cast<int>(w->dims().size()))
                fail(ErrorCode::IndexOutOfRange, what + ": sphere index " + std::to_string(sphere) + " is outside [" + std::to_string(w->dims().size()) + "]");
            auto coords = parse_point(text.substr(colon + 1), what);
            if (static_cast<int>(coords.size()) != w->dims()[static_cast<std::size_t>(sphere - 1)] + 1)
                fail(ErrorCode::NotOnSphere, what + ": wrong number of coordinates for sphere " + std::to_string(sphere));
            return w->embed(sphere, coords);
        }
        return parse_point(text, what);
    }

    auto dump(const Json & j) -> std::string
    {
        return j.dump(2) + "\n";
    }

    auto format_double(double v) -> std::string
    {
        return Json(v).dump();
    }

    auto run_cuplength(const Options & o, std::ostream & out) -> int
    {
        auto spec = load_ring_spec(o.spec, o.field);
        auto tensor = rings::GradedRing::tensor(spec.source, spec.target);
        auto z = cuplength::zero_divisor_generators(tensor, spec.hom);
        int max_factors = o.max_factors >= 0 ? o.max_factors : cuplength::default_max_factors(tensor);
        std::optional<std::size_t> budget;
        if (o.node_budget >= 0)
            budget = static_cast<std::size_t>(o.node_budget);
        auto cert = cuplength::cuplength_lower_bound(z, max_factors, budget);
        if (cert.k > 0 && ! cuplength::verify_certificate(cert))
            fail(ErrorCode::VerificationFailed, "certificate does not re-multiply to its product");
        if (o.json) {
            out << dump(cuplength::to_json(cert));
            return 0;
        }
        bounds::BoundReport r;
        r.raise_lower(cert.bound(), bounds::Step{"cup-length", "a non-zero product of k zero-divisors in H*(X)⊗H*(Y) forces TC(X,Y) > k (k = " + std::to_string(cert.k) + ")",
                                        ">= " + std::to_string(cert.bound())});
        if (! cert.complete)
            r.note(bounds::Step{"search", "node budget reached before the search finished", "partial"});
        r.settle();
        out << emit_report(r, false);
        if (cert.k > 0) {
            std::string product;
            for (std::size_t i = 0; i < cert.labels.size(); ++i)
                product += (i ? " · " : "") + std::string("(") + cert.labels[i] + ")";
            out << "certificate: " << product << " ≠ 0\n";
        }
        return 0;
    }

    auto run_plan(const Options & o, std::ostream & out) -> int
    {
        auto planner = make_planner(o);
        if (o.x.empty() || o.y.empty())
            fail(ErrorCode::PreconditionFailed, "--x and --y are required");
        planners::Query q{parse_planner_point(*planner, o.x, "--x"), parse_planner_point(*planner, o.y, "--y")};
        // A point of Y may be given in its own m+1 coordinates.
        if (o.planner != "wedge" && o.n > o.m && static_cast<int>(q.y.size()) == o.m + 1)
            q.y.resize(static_cast<std::size_t>(o.n + 1), 0.0);
        auto path = planner->plan(q);
        if (o.json) {
            out << dump(planners::to_json(path, *planner));
            return 0;
        }
        out << planner->name() << ": rule " << path.rule << " of " << planner->rule_count() << ", " << path.points.size() << " samples\n";
        out << "start " << planner->point_json(path.points.front()).dump() << "\n";
        out << "end   " << planner->point_json(path.points.back()).dump() << "\n";
        return 0;
    }

    auto run_verify(const Options & o, std::ostream & out) -> int
    {
        auto planner = make_planner(o);
        auto report = planners::verify_planner(*planner, o.samples, o.delta, o.seed);
        if (o.json)
            out << dump(planners::to_json(report));
        else {
            out << planner->name() << " planner with " << planner->rule_count() << " rules\n";
            out << "N = " << report.n << ", seed = " << report.seed << ", delta = " << format_double(o.delta) << "\n";
            out << "cover failures = " << report.cover_failures << "\n";
            out << "endpoint max error = " << format_double(report.endpoint_max_err) << "\n";
            out << "continuity defect = " << format_double(report.continuity_defect) << "\n";
            out << "rule usage:";
            for (std::size_t i = 0; i < report.rule_usage.size(); ++i)
                out << " " << i + 1 << "=" << report.rule_usage[i];
            out << "\n" << (report.passed() ? "PASS" : "FAIL") << "\n";
        }
        return report.passed() ? 0 : 3;
    }

    auto run_rp_pair(const Options & o, std::ostream & out) -> int
    {
        require_set(o.n, "--n");
        require_set(o.m, "--m");
        if (! o.field.empty() && parse_field(o.field).characteristic() != 2)
            fail(ErrorCode::PreconditionFailed, "the ℝP cup-length search needs a field of characteristic 2");
        std::optional<bounds::PlannerCheck> check;
        if (! o.no_verify)
            check = bounds::PlannerCheck{o.samples, o.delta, o.seed};
        auto r = bounds::rp_pair_bounds(o.n, o.m, witnesses_for(o, o.n, o.m), check);
        out << emit_report(r, o.json);
        return 0;
    }

}

auto load_ring_spec(const std::string & path, const std::string & field_override) -> RingSpec
{
    auto j = read_json_file(path);
    auto source_p = rings::presentation_from_json(member(j, "source", ""), "/source");
    auto target_p = rings::presentation_from_json(member(j, "target", ""), "/target");
    if (! field_override.empty()) {
        auto f = parse_field(field_override);
        source_p.field = f;
        target_p.field = f;
    }
    if (! (source_p.field == target_p.field))
        fail(ErrorCode::FieldMismatch, "source is over " + source_p.field.name() + " but target is over " + target_p.field.name());
    auto source = rings::GradedRing::build(source_p);
    auto target = rings::GradedRing::build(target_p);
    auto hom = rings::hom_from_json(source, target, member(j, "hom", ""), "/hom");
    return RingSpec{source, target, hom};
}

auto emit_report(const bounds::BoundReport & r, bool json) -> std::string
{
    if (json)
        return dump(bounds::to_json(r));
    std::ostringstream s;
    if (r.exact)
        s << "TC = " << r.lower << " (exact)\n";
    else if (r.upper)
        s << r.lower << " ≤ TC ≤ " << *r.upper << "\n";
    else
        s << "TC ≥ " << r.lower << "\n";
    for (auto & step : r.steps)
        s << "  " << step.rule << " [" << step.value << "]: " << step.cite << "\n";
    return s.str();
}

auto run(int argc, const char * const * argv, std::ostream & out, std::ostream & err) -> int
{
    Options o;
    CLI::App app{"Bounds and exact values of relative topological complexity TC(X,Y), with motion planners", "tcpair"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "Print JSON instead of text");
    app.add_option("--field", o.field, "Coefficient field: Q, F2 or Fp:<p>");
    app.add_option("--seed", o.seed, "Seed for sampling")->capture_default_str();
    app.add_option("--samples", o.samples, "Number of verification samples")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--delta", o.delta, "Perturbation size for the continuity check")->capture_default_str()->check(CLI::PositiveNumber);

    auto * polygon = app.add_subcommand("polygon", "TC(N(ℓ)) of a spatial polygon space");
    polygon->add_option("--lengths", o.lengths, "Comma-separated edge lengths, e.g. 1,1,2,3,5,7")->required();

    auto * polygon_pair = app.add_subcommand("polygon-pair", "TC(N(ℓ), N(ℓᴾ)) for an edge identification");
    polygon_pair->add_option("--lengths", o.lengths, "Comma-separated edge lengths")->required();
    polygon_pair->add_option("--partition", o.partition, "Ordered set partition, e.g. \"1|3|4|2,5|6\"")->required();

    auto * rp_pair = app.add_subcommand("rp-pair", "Bounds on TC(ℝPⁿ, ℝPᵐ) for 1 < m < n");
    rp_pair->add_option("--n", o.n)->required();
    rp_pair->add_option("--m", o.m)->required();
    rp_pair->add_option("--witness", o.witnesses, "Built-in non-singular map: quaternion or polymul");
    rp_pair->add_option("--witness-file", o.witness_files, "JSON bilinear map {p, q, k, coefficients: [[i, j, r, c], ...]}");
    rp_pair->add_flag("--no-verify", o.no_verify, "Skip sampling the planner of the best witness");

    auto * catalog = app.add_subcommand("catalog", "Closed-form families");
    catalog->require_subcommand(1);
    auto * sphere = catalog->add_subcommand("sphere-pair", "TC(Sⁿ, Sᵐ), n > m > 0");
    sphere->add_option("--n", o.n)->required();
    sphere->add_option("--m", o.m)->required();
    auto * torus = catalog->add_subcommand("torus", "TC(Tⁿ, H) for any non-empty H");
    torus->add_option("--n", o.n)->required();
    auto * wedge = catalog->add_subcommand("wedge", "Wedge of spheres relative to the wedge of its first m spheres");
    wedge->add_option("--dims", o.dims, "Comma-separated sphere dimensions")->required();
    wedge->add_option("--m", o.m, "Number of spheres in the sub-wedge (0 for the wedge point)")->required();
    auto * cp = catalog->add_subcommand("cp-pair", "TC(ℂPⁿ, ℂPᵐ)");
    cp->add_option("--n", o.n)->required();
    cp->add_option("--m", o.m)->required();

    auto * cup = app.add_subcommand("cuplength", "Zero-divisor cup-length of a user-supplied ring pair");
    cup->add_option("--spec", o.spec, "JSON file with source, target and hom")->required();
    cup->add_option("--max-factors", o.max_factors, "Largest number of factors to search");
    cup->add_option("--node-budget", o.node_budget, "Stop the search after this many nodes");

    auto add_planner_options = [&](CLI::App * sub) {
        sub->add_option("--planner", o.planner)->required()->check(CLI::IsMember({"sphere-pair", "wedge", "rp-pair"}));
        sub->add_option("--n", o.n);
        sub->add_option("--m", o.m);
        sub->add_option("--dims", o.dims, "Wedge sphere dimensions");
        sub->add_option("--witness", o.witnesses, "Non-singular map for rp-pair");
        sub->add_option("--witness-file", o.witness_files);
    };
    auto * plan = app.add_subcommand("plan", "Run one planner query");
    add_planner_options(plan);
    plan->add_option("--x", o.x, "Start point (wedge: 'sphere:coords' or '0')");
    plan->add_option("--y", o.y, "End point in Y (its own m+1 coordinates, or ambient ones)");
    auto * verify = app.add_subcommand("verify", "Sample a planner and check cover, endpoints and continuity");
    add_planner_options(verify);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (! o.field.empty())
            (void) parse_field(o.field);
        if (*polygon) {
            require_rationals(o, "polygon");
            out << emit_report(bounds::catalog_polygon(lengths::parse_lengths(o.lengths)), o.json);
            return 0;
        }
        if (*polygon_pair) {
            require_rationals(o, "polygon-pair");
            auto l = lengths::parse_lengths(o.lengths);
            out << emit_report(bounds::catalog_polygon(l, lengths::parse_partition(o.partition, l.size())), o.json);
            return 0;
        }
        if (*rp_pair)
            return run_rp_pair(o, out);
        if (*catalog) {
            require_rationals(o, "catalog");
            bounds::BoundReport r;
            if (*sphere)
                r = bounds::catalog_sphere_pair(o.n, o.m);
            else if (*torus)
                r = bounds::catalog_torus(o.n);
            else if (*wedge)
                r = bounds::catalog_wedge(parse_ints(o.dims, "--dims"), o.m);
            else
                r = bounds::catalog_cp_pair(o.n, o.m);
            out << emit_report(r, o.json);
            return 0;
        }
        if (*cup)
            return run_cuplength(o, out);
        if (*plan)
            return run_plan(o, out);
        return run_verify(o, out);
    }
    catch (const Error & e) {
        if (o.json)
            out << dump(Json{{"error", std::string(error_code_name(e.code()))}, {"message", e.what()}});
        err << "error: " << e.what() << "\n";
        return is_verification_failure(e.code()) ? 3 : 2;
    }
}

}
