#include <tcpair/error.hpp>
#include <tcpair/field.hpp>
#include <tcpair/linalg.hpp>
#include <tcpair/planners.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <thread>

namespace tcpair::planners {

namespace {
    auto dot(const Vec & a, const Vec & b) -> double
    {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += a[i] * b[i];
        return s;
    }

    auto norm(const Vec & a) -> double
    {
        return std::sqrt(dot(a, a));
    }

    auto euclidean(const Vec & a, const Vec & b) -> double
    {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    }

    auto basis_vector(std::size_t dim, std::size_t i, double sign = 1.0) -> Vec
    {
        Vec e(dim, 0.0);
        e[i] = sign;
        return e;
    }

    auto normalized(Vec v) -> Vec
    {
        double n = norm(v);
        for (auto & x : v)
            x /= n;
        return v;
    }

    /// Uniform random unit vector carried by the first `active` coordinates.
    auto random_unit(std::size_t dim, std::size_t active, std::mt19937_64 & rng) -> Vec
    {
        std::normal_distribution<double> g{0.0, 1.0};
        Vec v(dim, 0.0);
        double n = 0;
        while (n < 1e-6) {
            for (std::size_t i = 0; i < active; ++i)
                v[i] = g(rng);
            n = norm(v);
        }
        return normalized(v);
    }

    /// Point at chord distance delta from the unit vector x, moving within
    /// the first `active` coordinates along a random tangent direction.
    auto move_on_sphere(const Vec & x, double delta, std::size_t active, std::mt19937_64 & rng) -> Vec
    {
        std::normal_distribution<double> g{0.0, 1.0};
        Vec t(x.size(), 0.0);
        double n = 0;
        while (n < 1e-6) {
            for (std::size_t i = 0; i < active; ++i)
                t[i] = g(rng);
            double c = dot(t, x);
            for (std::size_t i = 0; i < active; ++i)
                t[i] -= c * x[i];
            n = norm(t);
        }
        double theta = 2 * std::asin(std::min(1.0, delta / 2));
        Vec out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = std::cos(theta) * x[i] + std::sin(theta) * t[i] / n;
        return out;
    }

    void require_unit(const Vec & v, const std::string & what)
    {
        if (std::abs(norm(v) - 1) > unit_tolerance)
            fail(ErrorCode::NotOnSphere, what + " is not a unit vector");
    }

    /// Discretized concatenation of great-circle arcs.
    class PathBuilder
    {
    public:
        using Embed = std::function<Vec(const Vec &)>;

        void arc(const Vec & a, const Vec & b, const Embed & embed = nullptr)
        {
            double c = dot(a, b);
            Vec w(a.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                w[i] = b[i] - c * a[i];
            double wn = norm(w);
            if (wn < 1e-14 && c < 0)
                fail(ErrorCode::VerificationFailed, "arc between antipodal points");
            double theta = std::atan2(wn, c);
            for (int s = _points.empty() ? 0 : 1; s < samples_per_segment; ++s) {
                double angle = theta * s / (samples_per_segment - 1);
                Vec p(a.size());
                for (std::size_t i = 0; i < a.size(); ++i)
                    p[i] = std::cos(angle) * a[i] + (wn > 0 ? std::sin(angle) * w[i] / wn : 0.0);
                if (s == samples_per_segment - 1)
                    p = b;
                _violation = std::max(_violation, std::abs(norm(p) - 1));
                p = normalized(std::move(p));
                _points.push_back(embed ? embed(p) : std::move(p));
            }
        }

        auto finish(int rule) -> PathSample
        {
            PathSample out;
            out.rule = rule;
            out.max_violation = _violation;
            const auto count = _points.size();
            for (std::size_t i = 0; i < count; ++i)
                out.t.push_back(count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1));
            out.points = std::move(_points);
            return out;
        }

    private:
        std::vector<Vec> _points;
        double _violation = 0;
    };

    auto splitmix64(std::uint64_t x) -> std::uint64_t
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    auto query_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) -> std::mt19937_64
    {
        return std::mt19937_64{splitmix64(splitmix64(seed) ^ splitmix64(index * 4 + stream))};
    }

    auto thread_count(int work) -> int
    {
        int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        if (const char * env = std::getenv("TCPAIR_THREADS")) {
            int cap = std::atoi(env);
            if (cap >= 1)
                threads = std::min(threads, cap);
        }
        return std::max(1, std::min(threads, work));
    }
}

auto Planner::dispatch(const Query & q) const -> int
{
    auto m = margins(q);
    int best = -1;
    for (int i = 0; i < static_cast<int>(m.size()); ++i)
        if (m[static_cast<std::size_t>(i)] > 0 && (best < 0 || m[static_cast<std::size_t>(i)] > m[static_cast<std::size_t>(best)]))
            best = i;
    if (best < 0)
        fail(ErrorCode::NoRuleApplies, "no rule of the " + name() + " planner covers the query");
    return best + 1;
}

auto Planner::query_distance(const Query & a, const Query & b) const -> double
{
    return std::max(distance(a.x, b.x), distance(a.y, b.y));
}

auto Planner::point_json(const Vec & p) const -> Json
{
    return Json(p);
}

auto to_json(const PathSample & path, const Planner & planner) -> Json
{
    Json points = Json::array();
    for (auto & p : path.points)
        points.push_back(planner.point_json(p));
    return Json{{"rule", path.rule}, {"t", path.t}, {"points", points}};
}

// ---------------------------------------------------------------- spheres

SpherePairPlanner::SpherePairPlanner(int n, int m, double epsilon) :
    _n(n),
    _m(m),
    _epsilon(epsilon)
{
    if (! (0 < m && m < n))
        fail(ErrorCode::PreconditionFailed, "sphere pair needs 0 < m < n");
    if (! (0 < epsilon && epsilon < 1))
        fail(ErrorCode::PreconditionFailed, "epsilon must lie in (0, 1)");
}

void SpherePairPlanner::validate(const Query & q) const
{
    const auto dim = static_cast<std::size_t>(_n + 1);
    if (q.x.size() != dim || q.y.size() != dim)
        fail(ErrorCode::NotOnSphere, "points must have " + std::to_string(dim) + " coordinates");
    require_unit(q.x, "x");
    require_unit(q.y, "y");
    for (std::size_t i = static_cast<std::size_t>(_m + 1); i < dim; ++i)
        if (std::abs(q.y[i]) > unit_tolerance)
            fail(ErrorCode::NotInSubsphere, "y must lie in the first " + std::to_string(_m + 1) + " coordinates");
}

auto SpherePairPlanner::margins(const Query & q) const -> std::vector<double>
{
    return {q.x[0] + _epsilon, _epsilon - q.x[0]};
}

auto SpherePairPlanner::plan(const Query & q) const -> PathSample
{
    validate(q);
    const auto dim = static_cast<std::size_t>(_n + 1);
    const auto e1 = basis_vector(dim, 0);
    int rule = dispatch(q);
    PathBuilder path;
    if (rule == 1) {
        path.arc(q.x, e1);
    }
    else {
        const auto south = basis_vector(dim, 0, -1.0);
        const auto last = basis_vector(dim, dim - 1);
        path.arc(q.x, south);
        path.arc(south, last);
        path.arc(last, e1);
    }
    // e1 to y through the pole orthogonal to S^m.
    const auto pole = basis_vector(dim, static_cast<std::size_t>(_m + 1));
    path.arc(e1, pole);
    path.arc(pole, q.y);
    return path.finish(rule);
}

auto SpherePairPlanner::sample(std::mt19937_64 & rng) const -> Query
{
    const auto dim = static_cast<std::size_t>(_n + 1);
    auto x = random_unit(dim, dim, rng);
    auto y = random_unit(dim, static_cast<std::size_t>(_m + 1), rng);
    return {x, y};
}

auto SpherePairPlanner::perturb(const Query & q, double delta, std::mt19937_64 & rng) const -> Query
{
    return {move_on_sphere(q.x, delta, q.x.size(), rng), move_on_sphere(q.y, delta, static_cast<std::size_t>(_m + 1), rng)};
}

auto SpherePairPlanner::distance(const Vec & a, const Vec & b) const -> double
{
    return euclidean(a, b);
}

auto SpherePairPlanner::special_queries() const -> std::vector<Query>
{
    const auto dim = static_cast<std::size_t>(_n + 1);
    auto e1 = basis_vector(dim, 0);
    auto s = basis_vector(dim, 0, -1.0);
    auto last = basis_vector(dim, dim - 1);
    Vec edge(dim, 0.0);
    edge[0] = -_epsilon;
    edge[1] = std::sqrt(1 - _epsilon * _epsilon);
    return {{e1, e1}, {s, e1}, {e1, s}, {s, s}, {last, basis_vector(dim, static_cast<std::size_t>(_m))}, {edge, e1}};
}

// ---------------------------------------------------------------- wedges

WedgePairPlanner::WedgePairPlanner(std::vector<int> dims, int m) :
    _dims(std::move(dims)),
    _ambient(0),
    _m(m)
{
    if (_dims.size() < 2)
        fail(ErrorCode::PreconditionFailed, "wedge needs at least two spheres");
    if (! (1 <= m && m < static_cast<int>(_dims.size())))
        fail(ErrorCode::PreconditionFailed, "wedge planner needs 1 <= m < n");
    for (int a : _dims) {
        if (a < 1)
            fail(ErrorCode::PreconditionFailed, "sphere dimensions must be >= 1");
        _offsets.push_back(_ambient);
        _ambient += static_cast<std::size_t>(a + 1);
    }
}

auto WedgePairPlanner::wedge_point() const -> Vec
{
    Vec p(_ambient, 0.0);
    for (auto o : _offsets)
        p[o] = 1.0;
    return p;
}

auto WedgePairPlanner::embed(int sphere, const Vec & coords) const -> Vec
{
    auto p = wedge_point();
    if (sphere == 0)
        return p;
    if (sphere < 0 || sphere > static_cast<int>(_dims.size()))
        fail(ErrorCode::NotOnSphere, "sphere index " + std::to_string(sphere) + " out of range");
    auto i = static_cast<std::size_t>(sphere - 1);
    if (coords.size() != static_cast<std::size_t>(_dims[i] + 1))
        fail(ErrorCode::NotOnSphere, "sphere " + std::to_string(sphere) + " needs " + std::to_string(_dims[i] + 1) + " coordinates");
    require_unit(coords, "point on sphere " + std::to_string(sphere));
    std::copy(coords.begin(), coords.end(), p.begin() + static_cast<std::ptrdiff_t>(_offsets[i]));
    return p;
}

auto WedgePairPlanner::locate(const Vec & p) const -> std::pair<int, Vec>
{
    int best = 0;
    double deviation = 1e-12;
    for (std::size_t i = 0; i < _dims.size(); ++i) {
        Vec block(p.begin() + static_cast<std::ptrdiff_t>(_offsets[i]), p.begin() + static_cast<std::ptrdiff_t>(_offsets[i] + static_cast<std::size_t>(_dims[i] + 1)));
        double d = euclidean(block, basis_vector(block.size(), 0));
        if (d > deviation) {
            deviation = d;
            best = static_cast<int>(i) + 1;
        }
    }
    if (best == 0)
        return {0, {}};
    auto i = static_cast<std::size_t>(best - 1);
    return {best, Vec(p.begin() + static_cast<std::ptrdiff_t>(_offsets[i]), p.begin() + static_cast<std::ptrdiff_t>(_offsets[i] + static_cast<std::size_t>(_dims[i] + 1)))};
}

auto WedgePairPlanner::antipode(int sphere) const -> Vec
{
    auto i = static_cast<std::size_t>(sphere - 1);
    return embed(sphere, basis_vector(static_cast<std::size_t>(_dims.at(i) + 1), 0, -1.0));
}

auto WedgePairPlanner::height(const Vec & p) const -> double
{
    double h = 1.0;
    for (auto o : _offsets)
        h = std::min(h, p[o]);
    return h;
}

void WedgePairPlanner::validate(const Query & q) const
{
    for (auto * p : {&q.x, &q.y}) {
        if (p->size() != _ambient)
            fail(ErrorCode::NotOnSphere, "wedge points need " + std::to_string(_ambient) + " product coordinates");
        int away = 0;
        for (std::size_t i = 0; i < _dims.size(); ++i) {
            Vec block(p->begin() + static_cast<std::ptrdiff_t>(_offsets[i]), p->begin() + static_cast<std::ptrdiff_t>(_offsets[i] + static_cast<std::size_t>(_dims[i] + 1)));
            require_unit(block, "sphere block " + std::to_string(i + 1));
            if (euclidean(block, basis_vector(block.size(), 0)) > unit_tolerance)
                ++away;
        }
        if (away > 1)
            fail(ErrorCode::NotOnSphere, "point lies on more than one sphere of the wedge");
    }
    auto [j, coords] = locate(q.y);
    if (j > _m)
        fail(ErrorCode::SubwedgeViolation, "y lies on sphere " + std::to_string(j) + ", outside the first " + std::to_string(_m));
}

auto WedgePairPlanner::margins(const Query & q) const -> std::vector<double>
{
    double u = height(q.x), v = height(q.y);
    double first = std::min(u + 1, v + 1);
    double second = std::max(std::min(-0.5 - u, v + 0.25), std::min(-0.5 - v, u + 0.25));
    double third = std::min(-u, -v);
    return {first, second, third};
}

auto WedgePairPlanner::plan(const Query & q) const -> PathSample
{
    validate(q);
    int rule = dispatch(q);
    auto [i, xs] = locate(q.x);
    auto [j, ys] = locate(q.y);
    // x0 is treated as lying on the first sphere; every arc there is constant.
    if (i == 0) {
        i = 1;
        xs = basis_vector(static_cast<std::size_t>(_dims[0] + 1), 0);
    }
    if (j == 0) {
        j = 1;
        ys = basis_vector(static_cast<std::size_t>(_dims[0] + 1), 0);
    }
    auto on = [this](int sphere) { return [this, sphere](const Vec & c) { return embed(sphere, c); }; };
    auto e1 = [this](int sphere) { return basis_vector(static_cast<std::size_t>(_dims[static_cast<std::size_t>(sphere - 1)] + 1), 0); };
    auto e2 = [this](int sphere) { return basis_vector(static_cast<std::size_t>(_dims[static_cast<std::size_t>(sphere - 1)] + 1), 1); };
    auto south = [this](int sphere) { return basis_vector(static_cast<std::size_t>(_dims[static_cast<std::size_t>(sphere - 1)] + 1), 0, -1.0); };

    double u = height(q.x), v = height(q.y);
    bool x_in_cap = rule == 3 || (rule == 2 && std::min(-0.5 - u, v + 0.25) >= std::min(-0.5 - v, u + 0.25));
    bool y_in_cap = rule == 3 || (rule == 2 && ! x_in_cap);

    PathBuilder path;
    if (x_in_cap) {
        // Contract within the cap to x_i, then follow the meridian to x0.
        path.arc(xs, south(i), on(i));
        path.arc(south(i), e2(i), on(i));
        path.arc(e2(i), e1(i), on(i));
    }
    else {
        path.arc(xs, e1(i), on(i));
    }
    if (y_in_cap) {
        path.arc(e1(j), e2(j), on(j));
        path.arc(e2(j), south(j), on(j));
        path.arc(south(j), ys, on(j));
    }
    else {
        path.arc(e1(j), ys, on(j));
    }
    return path.finish(rule);
}

auto WedgePairPlanner::sample(std::mt19937_64 & rng) const -> Query
{
    std::uniform_int_distribution<int> any(1, static_cast<int>(_dims.size()));
    std::uniform_int_distribution<int> sub(1, _m);
    int i = any(rng);
    auto xs = random_unit(static_cast<std::size_t>(_dims[static_cast<std::size_t>(i - 1)] + 1), static_cast<std::size_t>(_dims[static_cast<std::size_t>(i - 1)] + 1), rng);
    int j = sub(rng);
    auto ys = random_unit(static_cast<std::size_t>(_dims[static_cast<std::size_t>(j - 1)] + 1), static_cast<std::size_t>(_dims[static_cast<std::size_t>(j - 1)] + 1), rng);
    return {embed(i, xs), embed(j, ys)};
}

auto WedgePairPlanner::perturb(const Query & q, double delta, std::mt19937_64 & rng) const -> Query
{
    auto move = [&](const Vec & p, int spheres) {
        auto [s, c] = locate(p);
        std::uniform_int_distribution<int> pick(1, spheres);
        int chosen = pick(rng);
        if (s == 0) {
            s = chosen;
            c = basis_vector(static_cast<std::size_t>(_dims[static_cast<std::size_t>(s - 1)] + 1), 0);
        }
        auto moved = move_on_sphere(c, delta, c.size(), rng);
        return embed(s, normalized(moved));
    };
    auto x = move(q.x, static_cast<int>(_dims.size()));
    auto y = move(q.y, _m);
    return {x, y};
}

auto WedgePairPlanner::distance(const Vec & a, const Vec & b) const -> double
{
    return euclidean(a, b);
}

auto WedgePairPlanner::special_queries() const -> std::vector<Query>
{
    auto x0 = wedge_point();
    std::vector<Query> out{{x0, x0}};
    for (int i = 1; i <= static_cast<int>(_dims.size()); ++i)
        out.push_back({antipode(i), x0});
    for (int j = 1; j <= _m; ++j)
        out.push_back({x0, antipode(j)});
    for (int i = 1; i <= static_cast<int>(_dims.size()); ++i)
        for (int j = 1; j <= _m; ++j)
            out.push_back({antipode(i), antipode(j)});
    out.push_back({antipode(static_cast<int>(_dims.size())), embed(1, basis_vector(static_cast<std::size_t>(_dims[0] + 1), 1))});
    return out;
}

auto WedgePairPlanner::point_json(const Vec & p) const -> Json
{
    auto [s, c] = locate(p);
    Json out = Json::array();
    out.push_back(s);
    for (double x : c)
        out.push_back(x);
    return out;
}

// ---------------------------------------------------------------- bilinear maps

auto BilinearMap::coeff(int i, int j, int r) const -> const Rational &
{
    return c.at(static_cast<std::size_t>((i * q + j) * k + r));
}

auto BilinearMap::apply(const Vec & x, const Vec & y) const -> Vec
{
    Vec out(static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < p; ++i) {
        if (x[static_cast<std::size_t>(i)] == 0)
            continue;
        for (int j = 0; j < q; ++j) {
            double xy = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
            for (int r = 0; r < k; ++r) {
                auto & v = coeff(i, j, r);
                if (sgn(v) != 0)
                    out[static_cast<std::size_t>(r)] += v.get_d() * xy;
            }
        }
    }
    return out;
}

auto BilinearMap::apply_exact(const std::vector<Rational> & x, const std::vector<Rational> & y) const -> std::vector<Rational>
{
    std::vector<Rational> out(static_cast<std::size_t>(k), Rational{0});
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j)
            for (int r = 0; r < k; ++r)
                out[static_cast<std::size_t>(r)] += coeff(i, j, r) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
    return out;
}

auto BilinearMap::compose(const std::vector<std::vector<Rational>> & a) const -> BilinearMap
{
    BilinearMap out{p, q, static_cast<int>(a.size()), {}, certified_nonsingular, origin};
    out.c.assign(static_cast<std::size_t>(p * q * out.k), Rational{0});
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j)
            for (int s = 0; s < out.k; ++s) {
                Rational acc = 0;
                for (int r = 0; r < k; ++r)
                    acc += a[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)] * coeff(i, j, r);
                out.c[static_cast<std::size_t>((i * q + j) * out.k + s)] = acc;
            }
    return out;
}

auto BilinearMap::is_zero() const -> bool
{
    return std::all_of(c.begin(), c.end(), [](auto & v) { return sgn(v) == 0; });
}

auto build_polymul_map(int n, int m) -> BilinearMap
{
    if (n < 0 || m < 0)
        fail(ErrorCode::PreconditionFailed, "polynomial multiplication needs n, m >= 0");
    BilinearMap f{n + 1, m + 1, n + m + 1, {}, true, "polynomial multiplication; ℝ[t] has no zero divisors"};
    f.c.assign(static_cast<std::size_t>(f.p * f.q * f.k), Rational{0});
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= m; ++j)
            f.c[static_cast<std::size_t>((i * f.q + j) * f.k + i + j)] = 1;
    return f;
}

auto build_quaternion_map(int n, int m) -> BilinearMap
{
    if (n < 0 || m < 0 || n > 3 || m > 3 || m > n)
        fail(ErrorCode::PreconditionFailed, "quaternion map needs 0 <= m <= n <= 3");
    // Hamilton product of basis quaternions (1, i, j, k).
    auto multiply = [](const std::array<int, 4> & a, const std::array<int, 4> & b) {
        return std::array<int, 4>{a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3], a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1], a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
    };
    BilinearMap f{n + 1, m + 1, 4, {}, true, "quaternion multiplication q·r̄; ℍ is a division algebra"};
    f.c.assign(static_cast<std::size_t>(f.p * f.q * f.k), Rational{0});
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= m; ++j) {
            std::array<int, 4> a{}, b{};
            a[static_cast<std::size_t>(i)] = 1;
            b[static_cast<std::size_t>(j)] = j == 0 ? 1 : -1;
            auto prod = multiply(a, b);
            for (int r = 0; r < 4; ++r)
                f.c[static_cast<std::size_t>((i * f.q + j) * f.k + r)] = prod[static_cast<std::size_t>(r)];
        }
    return f;
}

auto sampled_nonsingularity(const BilinearMap & f, int samples, std::uint64_t seed) -> double
{
    double worst = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng{splitmix64(seed)};
    for (int s = 0; s < samples; ++s) {
        auto x = random_unit(static_cast<std::size_t>(f.p), static_cast<std::size_t>(f.p), rng);
        auto y = random_unit(static_cast<std::size_t>(f.q), static_cast<std::size_t>(f.q), rng);
        worst = std::min(worst, norm(f.apply(x, y)));
    }
    return worst;
}

namespace {
    /// Sylvester's criterion via fraction-exact elimination: all pivots positive.
    auto positive_definite(std::vector<std::vector<Rational>> a) -> bool
    {
        const auto n = a.size();
        for (std::size_t col = 0; col < n; ++col) {
            if (sgn(a[col][col]) <= 0)
                return false;
            for (std::size_t row = col + 1; row < n; ++row) {
                if (sgn(a[row][col]) == 0)
                    continue;
                Rational factor = a[row][col] / a[col][col];
                for (std::size_t c = col; c < n; ++c)
                    a[row][c] -= factor * a[col][c];
            }
        }
        return true;
    }

    auto diagonal_form(const BilinearMap & f, const std::vector<Rational> & w) -> std::vector<std::vector<Rational>>
    {
        std::vector<std::vector<Rational>> out(static_cast<std::size_t>(f.q), std::vector<Rational>(static_cast<std::size_t>(f.q), Rational{0}));
        for (int i = 0; i < f.q; ++i)
            for (int j = 0; j < f.q; ++j) {
                Rational acc = 0;
                for (int r = 0; r < f.k; ++r)
                    acc += w[static_cast<std::size_t>(r)] * (f.coeff(i, j, r) + f.coeff(j, i, r));
                out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc / 2;
            }
        return out;
    }
}

auto diagonal_positivize(const BilinearMap & f, std::uint64_t seed) -> BilinearMap
{
    if (f.q > f.p)
        fail(ErrorCode::PreconditionFailed, "diagonal positivization needs m <= n");
    if (f.is_zero())
        fail(ErrorCode::NotNonsingular, "the zero map is singular");
    if (! f.certified_nonsingular && sampled_nonsingularity(f, 100000, seed) < 1e-9)
        fail(ErrorCode::NotNonsingular, "sampling found f(x, y) = 0 for nonzero x, y");

    std::vector<std::vector<Rational>> candidates;
    auto unit = [&](int r, int sign) {
        std::vector<Rational> w(static_cast<std::size_t>(f.k), Rational{0});
        w[static_cast<std::size_t>(r)] = sign;
        return w;
    };
    candidates.push_back(unit(0, 1));
    for (int r = 0; r < f.k; ++r)
        for (int sign : {1, -1})
            if (r != 0 || sign != 1)
                candidates.push_back(unit(r, sign));
    {
        std::vector<Rational> integral;
        for (int r = 0; r < f.k; ++r)
            integral.emplace_back(1, r + 1);
        candidates.push_back(integral);
    }
    std::mt19937_64 rng{splitmix64(seed ^ 0x5eedULL)};
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int t = 0; t < 256; ++t) {
        std::vector<Rational> w;
        for (int r = 0; r < f.k; ++r)
            w.emplace_back(entry(rng));
        candidates.push_back(w);
    }

    for (std::size_t c = 0; c < candidates.size(); ++c) {
        auto & w = candidates[c];
        if (! positive_definite(diagonal_form(f, w)))
            continue;
        if (c == 0)
            return f;
        auto field = Field::rationals();
        linalg::Echelon e{field};
        std::vector<std::vector<Rational>> rows{w};
        e.add(linalg::to_sparse(w));
        for (int r = 0; r < f.k && static_cast<int>(rows.size()) < f.k; ++r) {
            auto v = unit(r, 1);
            if (e.add(linalg::to_sparse(v)))
                rows.push_back(v);
        }
        return f.compose(rows);
    }
    fail(ErrorCode::PositivizationFailed, "no linear functional found that is positive on the diagonal image");
}

// ---------------------------------------------------------------- projective spaces

auto canonical_representative(Vec u) -> Vec
{
    for (double x : u)
        if (std::abs(x) > 1e-12) {
            if (x < 0)
                for (auto & y : u)
                    y = -y;
            break;
        }
    return u;
}

ProjectivePairPlanner::ProjectivePairPlanner(BilinearMap f) :
    _f(std::move(f)),
    _n(_f.p - 1),
    _m(_f.q - 1)
{
    if (_f.q > _f.p || _f.k < 1)
        fail(ErrorCode::PreconditionFailed, "projective planner needs a map ℝ^{n+1} × ℝ^{m+1} → ℝ^k with m <= n");
    std::vector<Rational> diag_w(static_cast<std::size_t>(_f.k), Rational{0});
    diag_w[0] = 1;
    if (! positive_definite(diagonal_form(_f, diag_w)))
        fail(ErrorCode::PositivizationFailed, "map is not positive on the diagonal in its first coordinate");
    for (int r = 0; r < _f.k; ++r) {
        double s = 0;
        for (int i = 0; i < _f.p; ++i)
            for (int j = 0; j < _f.q; ++j) {
                double v = _f.coeff(i, j, r).get_d();
                s += v * v;
            }
        _row_norms.push_back(std::sqrt(s));
    }
}

auto ProjectivePairPlanner::rho(const Vec & u, const Vec & v) const -> Vec
{
    return _f.apply(u, Vec(v.begin(), v.begin() + _f.q));
}

void ProjectivePairPlanner::validate(const Query & q) const
{
    const auto dim = static_cast<std::size_t>(_n + 1);
    if (q.x.size() != dim || q.y.size() != dim)
        fail(ErrorCode::NotOnSphere, "representatives must have " + std::to_string(dim) + " coordinates");
    require_unit(q.x, "x");
    require_unit(q.y, "y");
    for (std::size_t i = static_cast<std::size_t>(_m + 1); i < dim; ++i)
        if (std::abs(q.y[i]) > unit_tolerance)
            fail(ErrorCode::NotInSubsphere, "y must lie in the first " + std::to_string(_m + 1) + " coordinates");
}

auto ProjectivePairPlanner::margins(const Query & q) const -> std::vector<double>
{
    auto r = rho(q.x, q.y);
    std::vector<double> out;
    for (int i = 0; i < _f.k; ++i) {
        double fr = _row_norms[static_cast<std::size_t>(i)];
        out.push_back(fr > 0 ? std::abs(r[static_cast<std::size_t>(i)]) / (2 * fr) : 0.0);
    }
    return out;
}

auto ProjectivePairPlanner::dispatch(const Query & q) const -> int
{
    if (distance(q.x, q.y) < 1e-12)
        return 1;
    auto r = rho(q.x, q.y);
    int best = -1;
    for (int i = 0; i < _f.k; ++i)
        if (std::abs(r[static_cast<std::size_t>(i)]) > 0 && (best < 0 || std::abs(r[static_cast<std::size_t>(i)]) > std::abs(r[static_cast<std::size_t>(best)])))
            best = i;
    if (best < 0)
        fail(ErrorCode::NoRuleApplies, "every coordinate of f(u, u') vanishes");
    return best + 1;
}

auto ProjectivePairPlanner::plan(const Query & q) const -> PathSample
{
    validate(q);
    int rule = dispatch(q);
    PathBuilder path;
    if (distance(q.x, q.y) < 1e-12) {
        path.arc(q.x, q.x);
        return path.finish(rule);
    }
    // Rotate u towards the representative of L' on which ρ_rule is positive.
    auto r = rho(q.x, q.y);
    Vec target = q.y;
    if (r[static_cast<std::size_t>(rule - 1)] < 0)
        for (auto & v : target)
            v = -v;
    path.arc(q.x, target);
    return path.finish(rule);
}

auto ProjectivePairPlanner::sample(std::mt19937_64 & rng) const -> Query
{
    const auto dim = static_cast<std::size_t>(_n + 1);
    auto x = random_unit(dim, dim, rng);
    auto y = random_unit(dim, static_cast<std::size_t>(_m + 1), rng);
    return {x, y};
}

auto ProjectivePairPlanner::perturb(const Query & q, double delta, std::mt19937_64 & rng) const -> Query
{
    return {move_on_sphere(q.x, delta, q.x.size(), rng), move_on_sphere(q.y, delta, static_cast<std::size_t>(_m + 1), rng)};
}

auto ProjectivePairPlanner::distance(const Vec & a, const Vec & b) const -> double
{
    Vec neg(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        neg[i] = -b[i];
    return std::min(euclidean(a, b), euclidean(a, neg));
}

auto ProjectivePairPlanner::special_queries() const -> std::vector<Query>
{
    const auto dim = static_cast<std::size_t>(_n + 1);
    auto e1 = basis_vector(dim, 0);
    auto em = basis_vector(dim, static_cast<std::size_t>(_m));
    auto last = basis_vector(dim, dim - 1);
    Vec mixed(dim, 0.0);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(_m); ++i)
        mixed[i] = 1.0 / std::sqrt(static_cast<double>(_m + 1));
    auto negated = mixed;
    for (auto & v : negated)
        v = -v;
    return {{e1, e1}, {e1, basis_vector(dim, 0, -1.0)}, {em, em}, {mixed, negated}, {last, e1}, {e1, em}};
}

// ---------------------------------------------------------------- verification

auto verify_planner(const Planner & planner, int n, double delta, std::uint64_t seed) -> VerificationReport
{
    if (n < 1)
        fail(ErrorCode::PreconditionFailed, "verification needs at least one sample");
    if (! (delta > 0))
        fail(ErrorCode::PreconditionFailed, "delta must be positive");

    struct Outcome
    {
        bool covered = true;
        int rule = 0;
        double endpoint = 0;
        double defect = 0;
        double violation = 0;
    };
    std::vector<Outcome> outcomes(static_cast<std::size_t>(n));
    auto specials = planner.special_queries();

    auto run = [&](std::size_t index) {
        auto & out = outcomes[index];
        auto rng = query_rng(seed, index, 0);
        Query q = index < specials.size() ? specials[index] : planner.sample(rng);
        try {
            auto margins = planner.margins(q);
            int rule = planner.dispatch(q);
            if (margins[static_cast<std::size_t>(rule - 1)] <= 0 && planner.distance(q.x, q.y) >= 1e-12)
                out.covered = false;
            auto path = planner.plan(q);
            out.rule = path.rule;
            out.endpoint = std::max(planner.distance(path.points.front(), q.x), planner.distance(path.points.back(), q.y));
            out.violation = path.max_violation;

            auto prng = query_rng(seed, index, 1);
            auto nearby = planner.perturb(q, delta, prng);
            if (planner.dispatch(nearby) == rule) {
                auto other = planner.plan(nearby);
                if (other.points.size() == path.points.size())
                    for (std::size_t s = 0; s < path.points.size(); ++s)
                        out.defect = std::max(out.defect, planner.distance(path.points[s], other.points[s]));
            }
        }
        catch (const Error & e) {
            if (e.code() != ErrorCode::NoRuleApplies)
                throw;
            out.covered = false;
        }
    };

    const int threads = thread_count(n);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t index = static_cast<std::size_t>(t); index < outcomes.size(); index += static_cast<std::size_t>(threads))
                        run(index);
                }
                catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        for (auto & th : pool)
            th.join();
    }
    for (auto & e : errors)
        if (e)
            std::rethrow_exception(e);

    VerificationReport report;
    report.n = n;
    report.seed = seed;
    report.rule_usage.assign(static_cast<std::size_t>(planner.rule_count()), 0);
    for (auto & o : outcomes) {
        if (! o.covered) {
            ++report.cover_failures;
            continue;
        }
        ++report.rule_usage[static_cast<std::size_t>(o.rule - 1)];
        report.endpoint_max_err = std::max(report.endpoint_max_err, o.endpoint);
        report.continuity_defect = std::max(report.continuity_defect, o.defect);
        report.max_violation = std::max(report.max_violation, o.violation);
    }
    return report;
}

auto to_json(const VerificationReport & r) -> Json
{
    return Json{{"N", r.n}, {"cover_failures", r.cover_failures}, {"endpoint_max_err", r.endpoint_max_err}, {"continuity_defect", r.continuity_defect}, {"seed", r.seed}};
}

}
