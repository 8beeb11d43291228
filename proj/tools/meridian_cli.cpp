// Command-line front end: grid verification, field-gradient evaluation at a
// point, singular-set tracing, separated-solution grid export, transform
// evaluation, and VTK export for visualization.
//
// Exit codes: 0 pass, 1 residual exceeds tolerance (verify only), 2 usage or
// domain error with a JSON error object on stdout.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "meridian/contour.hpp"
#include "meridian/core.hpp"
#include "meridian/efg.hpp"
#include "meridian/errors.hpp"
#include "meridian/expression.hpp"
#include "meridian/gallery.hpp"
#include "meridian/grid.hpp"
#include "meridian/io.hpp"
#include "meridian/pde.hpp"
#include "meridian/sov.hpp"
#include "meridian/transforms.hpp"

namespace {

using namespace meridian;

// ---------------------------------------------------------------------------
// JSON output. Hand-assembled so every number is the shortest round-trip
// decimal (io::format_double) and key order is deterministic.

std::string jstr(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

std::string jnum(double v) {
    if (!std::isfinite(v)) return "null";
    return io::format_double(v);
}

std::string jarr(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += items[i];
    }
    return out + "]";
}

// Ordered key/value pairs, values already serialized.
std::string jobj(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out = "{";
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (i) out += ",";
        out += jstr(kv[i].first) + ":" + kv[i].second;
    }
    return out + "}";
}

std::string jnums(const std::vector<double>& vs) {
    std::vector<std::string> items;
    items.reserve(vs.size());
    for (double v : vs) items.push_back(jnum(v));
    return jarr(items);
}

void emit(const std::string& json, const std::string& out_path) {
    std::cout << json << '\n';
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) throw InvalidParams("cannot open output file: " + out_path);
        os << json << '\n';
    }
}

[[noreturn]] void die(const std::string& type, const std::string& message) {
    std::cout << jobj({{"error", jobj({{"type", jstr(type)}, {"message", jstr(message)}})}})
              << '\n';
    std::exit(2);
}

// ---------------------------------------------------------------------------
// Flag parsing helpers.

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

std::string normalized(std::string s) {
    for (char& c : s) {
        if (c == '-') c = '_';
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return s;
}

// "k=v,k2=v2" -> ordered map; empty string -> empty map.
std::map<std::string, std::string> parse_params(const std::string& s) {
    std::map<std::string, std::string> out;
    if (s.empty()) return out;
    for (const auto& item : split(s, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InvalidParams("parameter item must look like k=v: '" + item + "'");
        out[normalized(item.substr(0, eq))] = item.substr(eq + 1);
    }
    return out;
}

class Params {
  public:
    Params(std::string owner, std::map<std::string, std::string> kv)
        : owner_(std::move(owner)), kv_(std::move(kv)) {}

    double num(const std::string& key, double fallback) const {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        used_.insert(key);
        return io::parse_double(it->second);
    }

    double require_num(const std::string& key) const {
        const auto it = kv_.find(key);
        if (it == kv_.end()) throw InvalidParams(owner_ + " needs parameter " + key);
        used_.insert(key);
        return io::parse_double(it->second);
    }

    int integer(const std::string& key, int fallback) const {
        const double v = num(key, fallback);
        if (v != std::floor(v) || std::fabs(v) > 1e9)
            throw InvalidParams(owner_ + " parameter " + key + " must be an integer");
        return static_cast<int>(v);
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        used_.insert(key);
        return it->second;
    }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    void reject_unknown() const {
        for (const auto& [k, v] : kv_)
            if (!used_.count(k)) throw InvalidParams(owner_ + " does not take parameter " + k);
    }

  private:
    std::string owner_;
    std::map<std::string, std::string> kv_;
    mutable std::set<std::string> used_;
};

Vec3 parse_point(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 3) throw InvalidParams("--point must be x0,x1,x2");
    return {io::parse_double(parts[0]), io::parse_double(parts[1]), io::parse_double(parts[2])};
}

Axis parse_axis(const std::string& s, bool with_count) {
    const auto parts = split(s, ':');
    if (with_count) {
        if (parts.size() != 3) throw InvalidParams("axis must be lo:hi:n, got '" + s + "'");
        const double n = io::parse_double(parts[2]);
        if (n != std::floor(n) || n < 2 || n > 1e7)
            throw InvalidParams("axis point count must be an integer >= 2");
        return {io::parse_double(parts[0]), io::parse_double(parts[1]), static_cast<int>(n)};
    }
    if (parts.size() != 2) throw InvalidParams("window axis must be lo:hi, got '" + s + "'");
    return {io::parse_double(parts[0]), io::parse_double(parts[1]), 2};
}

bool is_second_axis_key(const std::string& k) { return k == "rho" || k == "x2" || k == "second"; }

// "x0=lo:hi:n,rho=lo:hi:n[,rings=k]"
GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    bool saw_x0 = false, saw_second = false;
    for (const auto& item : split(s, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InvalidParams("grid item must look like axis=lo:hi:n: '" + item + "'");
        const std::string key = normalized(item.substr(0, eq));
        const std::string val = item.substr(eq + 1);
        if (key == "x0") {
            g.x0 = parse_axis(val, true);
            saw_x0 = true;
        } else if (is_second_axis_key(key)) {
            g.second = parse_axis(val, true);
            saw_second = true;
        } else if (key == "rings" || key == "theta") {
            const double n = io::parse_double(val);
            if (n != std::floor(n) || n < 1 || n > 1024)
                throw InvalidParams("ring count must be an integer >= 1");
            g.theta_rings = static_cast<int>(n);
        } else {
            throw InvalidParams("unknown grid axis '" + key + "'");
        }
    }
    if (!saw_x0 || !saw_second) throw InvalidParams("--grid needs x0= and rho= axes");
    g.validate();
    return g;
}

contour::Window parse_window(const std::string& s) {
    contour::Window w{};
    bool saw_x0 = false, saw_second = false;
    for (const auto& item : split(s, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InvalidParams("window item must look like axis=lo:hi: '" + item + "'");
        const std::string key = normalized(item.substr(0, eq));
        const Axis a = parse_axis(item.substr(eq + 1), false);
        if (key == "x0") {
            w.x0_lo = a.lo;
            w.x0_hi = a.hi;
            saw_x0 = true;
        } else if (is_second_axis_key(key)) {
            w.second_lo = a.lo;
            w.second_hi = a.hi;
            saw_second = true;
        } else {
            throw InvalidParams("unknown window axis '" + key + "'");
        }
    }
    if (!saw_x0 || !saw_second) throw InvalidParams("--window needs x0= and rho= ranges");
    w.validate();
    return w;
}

// ---------------------------------------------------------------------------
// Gallery parameter plumbing.

gallery::GalleryParams gallery_params(gallery::Example e, const Params& p) {
    using namespace gallery;
    switch (e) {
        case Example::BesselJ0: {
            BesselJ0Params out{p.num("beta", 1.0)};
            p.reject_unknown();
            validate(out);
            return out;
        }
        case Example::BesselI0: {
            BesselI0Params out{p.num("mu", 1.0)};
            p.reject_unknown();
            validate(out);
            return out;
        }
        case Example::Mobius: {
            MobiusParams out{p.num("a", 0.0), p.num("c", 1.0), p.num("d", 0.0)};
            p.reject_unknown();
            validate(out);
            return out;
        }
        case Example::Cubic: {
            CubicParams out{p.num("a3", 1.0), p.num("a1", 0.0)};
            p.reject_unknown();
            validate(out);
            return out;
        }
        case Example::Power: {
            PowerParams out{p.num("am1", 1.0), p.num("am2", -1.0)};
            p.reject_unknown();
            validate(out);
            return out;
        }
        case Example::ExpPair: {
            ExpPairParams out{p.num("b1", 1.0), p.num("b2", 2.0)};
            p.reject_unknown();
            validate(out);
            return out;
        }
    }
    throw InvalidParams("unknown gallery example");
}

// ---------------------------------------------------------------------------
// System registry.

constexpr SystemId kAllSystems[] = {
    SystemId::Continuity,     SystemId::SystemR,        SystemId::GeneralModification,
    SystemId::SystemH,        SystemId::SystemA3,       SystemId::Weinstein,
    SystemId::HyperbolicMod,  SystemId::CartEpd,        SystemId::VekuaCart,
    SystemId::AxialEq,        SystemId::AxialMod,       SystemId::CylEpd,
    SystemId::Bihyperbolic,   SystemId::BihyperbolicMod, SystemId::VekuaMerid,
    SystemId::MaxwellMerid,   SystemId::CrMerid,        SystemId::StokesBeltrami,
    SystemId::AnisotropicWeinstein, SystemId::AnisotropicSystem,
};

SystemId system_from_name(const std::string& raw) {
    const std::string name = normalized(raw);
    for (SystemId id : kAllSystems)
        if (name == system_name(id)) return id;
    if (name == "axial_hyperbolic") return SystemId::AxialEq;
    if (name == "epd") return SystemId::CylEpd;
    if (name == "vekua") return SystemId::VekuaMerid;
    if (name == "maxwell") return SystemId::MaxwellMerid;
    if (name == "cr") return SystemId::CrMerid;
    std::string known;
    for (SystemId id : kAllSystems) known += std::string(" ") + system_name(id);
    throw InvalidParams("unknown system '" + raw + "'; known:" + known);
}

// ---------------------------------------------------------------------------
// Candidate construction. A candidate spec is kind:k=v,... where the kind
// decides which shapes it can take; the system's form picks the shape.

struct BuiltCandidate {
    Candidate cand;
    std::optional<double> family_alpha;  // used when --alpha is not given
};

using PotentialFn = std::function<double(const MeridianPoint&)>;

// Lifts a chart potential to the system's shape. A cylindrical potential
// reads the distance to the x0 axis; a planar one reads x2 itself.
Candidate scalar_candidate(SystemForm form, const PotentialFn& g, bool planar = false) {
    if (form == SystemForm::ScalarVolume) {
        if (planar)
            return Candidate::scalar3([g](const Vec3& x) { return g({x[0], x[2], 0.0}); });
        return Candidate::scalar3([g](const Vec3& x) {
            return g({x[0], std::hypot(x[1], x[2]), std::atan2(x[2], x[1])});
        });
    }
    if (form == SystemForm::ScalarChart)
        return Candidate::scalar2([g](double x0, double second) {
            return g({x0, second, 0.0});
        });
    throw ArityMismatch("a scalar candidate cannot feed a pair or triple system");
}

transforms::Original original_from_spec(const std::string& spec, std::string* canonical) {
    const auto colon = spec.find(':');
    const std::string name = normalized(colon == std::string::npos ? spec : spec.substr(0, colon));
    Params p("original '" + name + "'",
             parse_params(colon == std::string::npos ? "" : spec.substr(colon + 1)));
    if (canonical) *canonical = spec;
    if (name == "one") {
        p.reject_unknown();
        return transforms::original_one();
    }
    if (name == "tau") {
        p.reject_unknown();
        return transforms::original_tau();
    }
    if (name == "exp_decay" || name == "exp") {
        const double a = p.require_num("a");
        p.reject_unknown();
        return transforms::original_exp_decay(a);
    }
    if (name == "exp_abs") {
        const double a = p.require_num("a");
        p.reject_unknown();
        return transforms::original_exp_abs(a);
    }
    throw InvalidParams("unknown original '" + spec + "' (one, tau, exp-decay:a=, exp-abs:a=)");
}

AxialPair transform_value(const std::string& kind_raw, const transforms::Original& o,
                          const MeridianPoint& p, const transforms::QuadratureSettings& qs,
                          bool conjugate) {
    using namespace transforms;
    const std::string kind = normalized(kind_raw);
    if (kind == "lf" || kind == "lf2") {
        if (kind == "lf2" && o.support != Support::TwoSided)
            throw InvalidParams("lf2 needs a two-sided original (exp-abs)");
        return laplace_fueter(o, p, qs);
    }
    if (kind == "gamma") return gamma_rq(p, conjugate, qs);
    if (kind == "ffc") return fourier_fueter(o, FourierKind::Cosine, p, qs);
    if (kind == "ffs") return fourier_fueter(o, FourierKind::Sine, p, qs);
    if (kind == "ffe") return fourier_fueter(o, FourierKind::Exponential, p, qs);
    throw InvalidParams("unknown transform kind '" + kind_raw +
                        "' (lf, lf2, gamma, ffc, ffs, ffe)");
}

BuiltCandidate build_candidate(const std::string& spec, SystemForm form) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos || colon == 0)
        throw InvalidParams("candidate must look like kind:... , got '" + spec + "'");
    const std::string kind = normalized(spec.substr(0, colon));
    const std::string rest = spec.substr(colon + 1);

    if (kind == "gallery") {
        const auto items = split(rest, ',');
        if (items.empty() || items[0].empty())
            throw InvalidParams("gallery candidate needs an example name");
        const gallery::Example e = gallery::example_from_name(items[0]);
        std::string tail;
        for (std::size_t i = 1; i < items.size(); ++i)
            tail += (i > 1 ? "," : "") + items[i];
        const auto gp = gallery_params(e, Params("gallery:" + items[0], parse_params(tail)));
        const auto field = gallery::make_field(e, gp);
        BuiltCandidate out{Candidate::scalar2(nullptr), field.alpha};
        switch (form) {
            case SystemForm::PairChart:
                out.cand = Candidate::pair([field](double x0, double second) {
                    const MeridianPoint p{x0, second, 0.0};
                    return AxialPair{field.E0(p), field.Erho(p)};
                });
                return out;
            case SystemForm::TripleVolume:
                out.cand = Candidate::triple([field](const Vec3& x) {
                    const double rho = std::hypot(x[1], x[2]);
                    const double theta = std::atan2(x[2], x[1]);
                    return efg::lift_field(field, theta, {x[0], rho, theta});
                });
                return out;
            default: {
                const auto g = gallery::meridian_potential(e, gp);
                out.cand = scalar_candidate(form, g);
                return out;
            }
        }
    }

    if (kind == "literal") {
        const auto f = expr::Expression::parse(rest);
        if (form == SystemForm::ScalarVolume)
            return {Candidate::scalar3([f](const Vec3& x) { return f(x); }), std::nullopt};
        if (form == SystemForm::ScalarChart)
            return {Candidate::scalar2([f](double a, double b) { return f(a, b); }),
                    std::nullopt};
        throw ArityMismatch("literal candidates are scalar; the system wants a pair or triple");
    }

    const Params p("candidate " + kind, parse_params(rest));

    if (kind == "euler_planar") {
        const double alpha = p.require_num("alpha");
        const double a1 = p.num("a1", 1.0), a2 = p.num("a2", 0.0);
        p.reject_unknown();
        const PotentialFn g = [alpha, a1, a2](const MeridianPoint& q) {
            return sov::euler_planar(alpha, a1, a2, q.rho);
        };
        return {scalar_candidate(form, g, true), alpha};
    }

    if (kind == "theorem1") {
        sov::CartesianSoVParams sp;
        sp.alpha = p.require_num("alpha");
        sp.beta = p.require_num("beta");
        sp.B1 = p.num("b1", 1.0);
        sp.B2 = p.num("b2", 0.0);
        sp.modes = {{p.integer("lambda", 0), p.num("c1", 1.0), p.num("c2", 0.0),
                     p.num("a1", 1.0), p.num("a2", 0.0)}};
        p.reject_unknown();
        for (const auto& w : sov::validate(sp)) std::cerr << "warning: " << w << '\n';
        if (form != SystemForm::ScalarVolume)
            throw ArityMismatch("theorem1 candidates live on R^3 (x2 > 0)");
        return {Candidate::scalar3(sov::theorem1_field(sp)), sp.alpha};
    }

    if (kind == "theorem2") {
        sov::CylindricalSoVParams sp;
        sp.alpha = p.require_num("alpha");
        const std::string branch = normalized(p.text("branch", "hyperbolic"));
        if (branch == "hyperbolic")
            sp.branch = sov::Branch::Hyperbolic;
        else if (branch == "trigonometric" || branch == "trig")
            sp.branch = sov::Branch::Trigonometric;
        else
            throw InvalidParams("branch must be hyperbolic or trigonometric");
        sp.freq = p.require_num("freq");
        sp.B1 = p.num("b1", 1.0);
        sp.B2 = p.num("b2", 0.0);
        sp.modes = {{p.integer("lambda", 0), p.num("c1", 1.0), p.num("c2", 0.0),
                     p.num("a1", 1.0), p.num("a2", 0.0)}};
        p.reject_unknown();
        for (const auto& w : sov::validate(sp)) std::cerr << "warning: " << w << '\n';
        const PotentialFn g = [sp](const MeridianPoint& q) {
            return sov::theorem2_potential(sp, q.x0, q.theta, q.rho);
        };
        return {scalar_candidate(form, g), sp.alpha};
    }

    if (kind == "euler_cyl") {
        const double alpha = p.require_num("alpha");
        const int lambda = p.integer("lambda", 0);
        const double a1 = p.num("a1", 1.0), a2 = p.num("a2", 0.0);
        const double c1 = p.num("c1", 1.0), c2 = p.num("c2", 0.0);
        p.reject_unknown();
        const PotentialFn g = [=](const MeridianPoint& q) {
            const double s = c1 * std::cos(lambda * q.theta) + c2 * std::sin(lambda * q.theta);
            return s * sov::euler_cylindrical(alpha, lambda, a1, a2, q.rho);
        };
        return {scalar_candidate(form, g), alpha};
    }

    if (kind == "gaspt_h" || kind == "gaspt_t") {
        const double alpha = p.require_num("alpha");
        const double b1 = p.num("b1", 1.0), b2 = p.num("b2", 0.0);
        const double a1 = p.num("a1", 1.0), a2 = p.num("a2", 0.0);
        ScalarField2 g2;
        if (kind == "gaspt_h") {
            const double beta = p.require_num("beta");
            p.reject_unknown();
            g2 = sov::gaspt_hyperbolic(alpha, beta, b1, b2, a1, a2);
        } else {
            const int mu = p.integer("mu", 1);
            p.reject_unknown();
            g2 = sov::gaspt_trigonometric(alpha, mu, b1, b2, a1, a2);
        }
        const PotentialFn g = [g2](const MeridianPoint& q) { return g2(q.x0, q.rho); };
        return {scalar_candidate(form, g), alpha};
    }

    if (kind == "transform") {
        const std::string tkind = p.text("kind", "");
        if (tkind.empty()) throw InvalidParams("transform candidate needs kind=...");
        std::string oname = p.text("original", "one");
        transforms::Original o;
        if (p.has("a")) {
            const double a = p.require_num("a");
            const std::string n = normalized(oname);
            if (n == "exp_decay" || n == "exp")
                o = transforms::original_exp_decay(a);
            else if (n == "exp_abs")
                o = transforms::original_exp_abs(a);
            else
                throw InvalidParams("parameter a only applies to exp-decay / exp-abs originals");
        } else {
            o = original_from_spec(oname, nullptr);
        }
        const bool conj = p.num("conjugate", 0.0) != 0.0;
        p.reject_unknown();
        if (form != SystemForm::PairChart)
            throw ArityMismatch("transform candidates are chart pairs (u0, urho)");
        transforms::QuadratureSettings qs;
        return {Candidate::pair([=](double x0, double second) {
                    return transform_value(tkind, o, {x0, second, 0.0}, qs, conj);
                }),
                1.0};
    }

    throw InvalidParams("unknown candidate kind '" + kind +
                        "' (gallery, literal, euler-planar, theorem1, theorem2, euler-cyl, "
                        "gaspt-h, gaspt-t, transform)");
}

double candidate_value(const Candidate& cand, const MeridianPoint& p) {
    if (const auto* f = std::get_if<ScalarField3>(&cand.fn)) {
        const ReducedQuaternion q = p.embed();
        return (*f)({q.x0, q.x1, q.x2});
    }
    if (const auto* f = std::get_if<ScalarField2>(&cand.fn)) return (*f)(p.x0, p.rho);
    if (const auto* f = std::get_if<TripleField>(&cand.fn)) {
        const ReducedQuaternion q = p.embed();
        return (*f)({q.x0, q.x1, q.x2})[0];
    }
    const auto& f = std::get<PairField>(cand.fn);
    return f(p.x0, p.rho).u0;
}

void write_points_csv(const std::string& path, bool lifted,
                      const std::vector<MeridianPoint>& pts, const std::vector<double>& values,
                      const std::vector<double>& residuals) {
    std::vector<std::string> header = lifted
        ? std::vector<std::string>{"x0", "rho", "theta", "value", "residual"}
        : std::vector<std::string>{"x0", "rho", "value", "residual"};
    std::vector<std::vector<double>> rows;
    rows.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (lifted)
            rows.push_back({pts[i].x0, pts[i].rho, pts[i].theta, values[i], residuals[i]});
        else
            rows.push_back({pts[i].x0, pts[i].rho, values[i], residuals[i]});
    }
    std::ofstream os(path);
    if (!os) throw InvalidParams("cannot open output file: " + path);
    io::write_csv(os, header, rows);
}

// ---------------------------------------------------------------------------
// Subcommand state and handlers.

struct Flags {
    std::string system, candidate, example, params, point, window, grid, family;
    std::string kind, original, out, format;
    double alpha = 0.0, tol = 0.0;
    std::uint64_t seed = 0;
    int res = 256;
    bool conjugate = false;
    bool alpha_set = false, tol_set = false;
};

std::vector<MeridianPoint> resolve_points(SystemId id, const std::string& grid_spec) {
    if (grid_spec.rfind("csv:", 0) == 0) {
        const std::string path = grid_spec.substr(4);
        std::ifstream is(path);
        if (!is) throw InvalidParams("cannot open grid CSV: " + path);
        return io::points_from_csv(io::read_csv(is));
    }
    const GridSpec gs = grid_spec.empty() ? GridSpec{} : parse_grid(grid_spec);
    return grid_meridian_points(id, gs);
}

int cmd_verify(const Flags& fl) {
    const SystemId id = system_from_name(fl.system);
    const auto built = build_candidate(fl.candidate, system_form(id));

    SystemParams prm;
    prm.alpha = fl.alpha_set ? fl.alpha : built.family_alpha.value_or(0.0);
    const Params sp("system", parse_params(fl.params));
    prm.alpha = sp.num("alpha", prm.alpha);
    prm.alpha1 = sp.num("alpha1", 0.0);
    prm.alpha2 = sp.num("alpha2", 0.0);
    prm.a00 = sp.num("a00", 0.0);
    prm.a11 = sp.num("a11", 0.0);
    prm.a22 = sp.num("a22", 0.0);
    sp.reject_unknown();

    const double tol = fl.tol_set ? fl.tol : 1e-6;
    const std::string format = fl.format.empty() ? "json" : fl.format;
    const auto points = resolve_points(id, fl.grid);
    const auto rep = residual(id, built.cand, prm, points);

    if (format == "csv") {
        if (fl.out.empty()) throw InvalidParams("--format csv needs --out FILE");
        std::vector<double> values(points.size());
        for (std::size_t i = 0; i < points.size(); ++i)
            values[i] = candidate_value(built.cand, points[i]);
        const auto resid = pointwise_residuals(id, built.cand, prm, points);
        write_points_csv(fl.out, system_is_lifted(id), points, values, resid);
    } else if (format != "json") {
        throw InvalidParams("verify writes json reports or csv grids, not vtk");
    }

    const bool pass = rep.max_abs <= tol;
    const std::string json = jobj({
        {"command", jstr("verify")},
        {"system", jstr(system_name(id))},
        {"candidate", jstr(fl.candidate)},
        {"alpha", jnum(prm.alpha)},
        {"tolerance", jnum(tol)},
        {"seed", std::to_string(fl.seed)},
        {"report", jobj({
                       {"max_abs", jnum(rep.max_abs)},
                       {"mean_abs", jnum(rep.mean_abs)},
                       {"worst_point", jnums({rep.worst_point[0], rep.worst_point[1],
                                              rep.worst_point[2]})},
                       {"n_points", std::to_string(rep.n_points)},
                       {"n_skipped", std::to_string(rep.n_skipped)},
                       {"fd_step", jnum(rep.fd_step)},
                   })},
        {"pass", pass ? "true" : "false"},
    });
    emit(json, format == "json" ? fl.out : "");
    return pass ? 0 : 1;
}

int cmd_efg(const Flags& fl) {
    const gallery::Example e = gallery::example_from_name(fl.example);
    const auto gp = gallery_params(e, Params("gallery", parse_params(fl.params)));
    const auto field = gallery::make_field(e, gp);
    const Vec3 pt = parse_point(fl.point);
    const double rho = std::hypot(pt[1], pt[2]);
    const double theta = std::atan2(pt[2], pt[1]);
    const MeridianPoint q{pt[0], rho, theta};

    const auto t = efg::efg_assemble(field, theta, q);
    const auto sr = efg::singular_residuals(field, q, field.alpha);

    std::vector<std::string> matrix_rows;
    for (int i = 0; i < 3; ++i)
        matrix_rows.push_back(jnums({t.m[i][0], t.m[i][1], t.m[i][2]}));

    std::vector<std::pair<std::string, std::string>> kv = {
        {"command", jstr("efg")},
        {"example", jstr(gallery::example_name(e))},
        {"point", jnums({pt[0], pt[1], pt[2]})},
        {"alpha", jnum(field.alpha)},
        {"matrix", jarr(matrix_rows)},
        {"invariants", jobj({{"I", jnum(t.I)}, {"II", jnum(t.II)}, {"III", jnum(t.III)}})},
        {"roots_closed", jnums({t.roots_closed[0], t.roots_closed[1], t.roots_closed[2]})},
        {"roots_numeric", jnums({t.roots_numeric[0], t.roots_numeric[1], t.roots_numeric[2]})},
        {"singular_residuals", jobj({{"f1", jnum(sr.f1)}, {"f2", jnum(sr.f2)}})},
    };
    if (e == gallery::Example::Mobius) {
        const auto mp = std::get<gallery::MobiusParams>(gp);
        const auto printed = gallery::mobius_char_roots(mp, q, true);
        kv.push_back({"paper_formula",
                      jobj({{"roots", jnums({printed[0], printed[1], printed[2]})},
                            {"matches_numeric",
                             gallery::mobius_printed_matches(mp, q) ? "true" : "false"}})});
    }
    emit(jobj(kv), fl.out);
    return 0;
}

int cmd_singular(const Flags& fl) {
    const gallery::Example e = gallery::example_from_name(fl.example);
    const auto gp = gallery_params(e, Params("gallery", parse_params(fl.params)));
    const auto field = gallery::make_field(e, gp);
    const contour::Window w =
        fl.window.empty() ? contour::Window{-3.0, 3.0, 0.05, 3.0} : parse_window(fl.window);
    const auto pieces = efg::trace_singular_set(field, field.alpha, w, fl.res);
    const std::string format = fl.format.empty() ? "csv" : fl.format;

    if (format == "json") {
        std::vector<std::string> parr;
        for (const auto& pc : pieces) {
            std::vector<std::string> pts;
            for (const auto& p : pc.points) pts.push_back(jnums({p.u0, p.urho}));
            parr.push_back(jobj({{"label", jstr(pc.label)},
                                 {"closed", pc.closed ? "true" : "false"},
                                 {"points", jarr(pts)}}));
        }
        emit(jobj({{"command", jstr("singular")},
                   {"example", jstr(gallery::example_name(e))},
                   {"pieces", jarr(parr)}}),
             fl.out);
        return 0;
    }
    if (format != "csv") throw InvalidParams("singular writes csv or json");
    std::ostringstream os;
    io::write_polylines_csv(os, pieces);
    std::cout << os.str();
    if (!fl.out.empty()) {
        std::ofstream f(fl.out);
        if (!f) throw InvalidParams("cannot open output file: " + fl.out);
        f << os.str();
    }
    return 0;
}

int cmd_sov(const Flags& fl) {
    const std::string fam = normalized(fl.family);
    SystemId id;
    if (fam == "theorem1" || fam == "euler_planar")
        id = SystemId::Weinstein;
    else if (fam == "theorem2" || fam == "euler_cyl")
        id = SystemId::AxialEq;
    else if (fam == "gaspt_h" || fam == "gaspt_t")
        id = SystemId::CylEpd;
    else
        throw InvalidParams("unknown family '" + fl.family +
                            "' (theorem1, theorem2, euler-planar, euler-cyl, gaspt-h, gaspt-t)");

    const auto built = build_candidate(fam + ":" + fl.params, system_form(id));
    SystemParams prm;
    prm.alpha = fl.alpha_set ? fl.alpha : built.family_alpha.value_or(0.0);

    const GridSpec gs = fl.grid.empty() ? GridSpec{} : parse_grid(fl.grid);
    const auto points = grid_meridian_points(id, gs);
    std::vector<double> values(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        values[i] = candidate_value(built.cand, points[i]);
    const auto resid = pointwise_residuals(id, built.cand, prm, points);

    const bool lifted = system_is_lifted(id);
    const std::string format = fl.format.empty() ? "csv" : fl.format;
    if (format == "json") {
        std::vector<std::string> rows;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (lifted)
                rows.push_back(
                    jnums({points[i].x0, points[i].rho, points[i].theta, values[i], resid[i]}));
            else
                rows.push_back(jnums({points[i].x0, points[i].rho, values[i], resid[i]}));
        }
        emit(jobj({{"command", jstr("sov")},
                   {"family", jstr(fam)},
                   {"system", jstr(system_name(id))},
                   {"alpha", jnum(prm.alpha)},
                   {"rows", jarr(rows)}}),
             fl.out);
        return 0;
    }
    if (format != "csv") throw InvalidParams("sov writes csv or json");
    if (fl.out.empty()) throw InvalidParams("sov --format csv needs --out FILE");
    write_points_csv(fl.out, lifted, points, values, resid);
    std::cout << jobj({{"command", jstr("sov")},
                       {"family", jstr(fam)},
                       {"system", jstr(system_name(id))},
                       {"alpha", jnum(prm.alpha)},
                       {"n_points", std::to_string(points.size())},
                       {"out", jstr(fl.out)}})
              << '\n';
    return 0;
}

int cmd_transform(const Flags& fl) {
    transforms::QuadratureSettings qs;
    if (fl.tol_set) qs.abs_tol = fl.tol;
    const Vec3 pt = parse_point(fl.point);
    const MeridianPoint q{pt[0], std::hypot(pt[1], pt[2]), std::atan2(pt[2], pt[1])};
    std::string canonical = fl.original;
    transforms::Original o = original_from_spec(fl.original, &canonical);
    const auto v = transform_value(fl.kind, o, q, qs, fl.conjugate);
    emit(jobj({{"command", jstr("transform")},
               {"kind", jstr(normalized(fl.kind))},
               {"original", jstr(canonical)},
               {"point", jobj({{"x0", jnum(q.x0)}, {"rho", jnum(q.rho)}})},
               {"value", jobj({{"u0", jnum(v.u0)}, {"urho", jnum(v.urho)}})},
               {"abs_tol", jnum(qs.abs_tol)}}),
          fl.out);
    return 0;
}

int cmd_export(const Flags& fl) {
    if (!fl.format.empty() && fl.format != "vtk") throw InvalidParams("export writes vtk");
    const gallery::Example e = gallery::example_from_name(fl.example);
    const auto gp = gallery_params(e, Params("gallery", parse_params(fl.params)));
    const auto field = gallery::make_field(e, gp);
    const auto g = gallery::meridian_potential(e, gp);
    const GridSpec gs = fl.grid.empty() ? GridSpec{} : parse_grid(fl.grid);
    gs.validate();
    if (!(gs.second.lo > 0.0)) throw DomainError("export grid needs rho > 0");

    const auto x0s = gs.x0.values();
    const auto rhos = gs.second.values();
    const std::size_t nx = x0s.size(), ny = rhos.size();
    std::vector<std::vector<double>> vals(4, std::vector<double>(nx * ny));
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            const MeridianPoint p{x0s[i], rhos[j], 0.0};
            const std::size_t at = j * nx + i;
            vals[0][at] = g(p);
            vals[1][at] = field.E0(p);
            vals[2][at] = field.Erho(p);
            vals[3][at] = efg::singular_residuals(field, p, field.alpha).f2;
        }

    std::ostringstream os;
    io::write_vtk(os, std::string("meridian field ") + gallery::example_name(e), x0s, rhos,
                  {"potential", "E0", "Erho", "f2_residual"}, vals);
    if (fl.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(fl.out);
        if (!f) throw InvalidParams("cannot open output file: " + fl.out);
        f << os.str();
        std::cout << jobj({{"command", jstr("export")},
                           {"example", jstr(gallery::example_name(e))},
                           {"out", jstr(fl.out)},
                           {"n_points", std::to_string(nx * ny)}})
                  << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Config file: UTF-8 JSON, top-level "command" object whose "name" picks the
// subcommand; other keys become --key value pairs. Command-line flags given
// after it override because every option takes the last value.

std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string config_path;
    std::vector<std::string> rest;
    rest.push_back(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw InvalidParams("--config needs a file path");
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (config_path.empty()) return rest;

    std::ifstream is(config_path);
    if (!is) throw InvalidParams("cannot open config file: " + config_path);
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(is);
    } catch (const std::exception& ex) {
        throw InvalidParams(std::string("config is not valid JSON: ") + ex.what());
    }
    if (!root.is_object() || !root.contains("command") || !root["command"].is_object())
        throw InvalidParams("config needs a top-level \"command\" object");
    const auto& cmd = root["command"];
    if (!cmd.contains("name") || !cmd["name"].is_string())
        throw InvalidParams("config command needs a \"name\" string");
    const std::string name = cmd["name"].get<std::string>();

    std::vector<std::string> out;
    out.push_back(rest[0]);
    out.push_back(name);
    for (const auto& [key, value] : cmd.items()) {
        if (key == "name") continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) out.push_back("--" + key);
        } else if (value.is_string()) {
            out.push_back("--" + key);
            out.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            out.push_back("--" + key);
            out.push_back(value.dump());
        } else {
            throw InvalidParams("config value for '" + key + "' must be scalar");
        }
    }
    // Splice the remaining command-line args after the config-derived ones so
    // they win. A repeated subcommand token is dropped; a different one is an
    // error.
    for (std::size_t i = 1; i < rest.size(); ++i) {
        if (i == 1 && !rest[i].empty() && rest[i][0] != '-') {
            if (rest[i] != name)
                throw InvalidParams("config command '" + name + "' conflicts with '" + rest[i] +
                                    "'");
            continue;
        }
        out.push_back(rest[i]);
    }
    return out;
}

void add_common(CLI::App* sub, Flags& fl) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--out", fl.out, "output file");
    sub->add_option("--seed", fl.seed, "rng seed recorded in reports");
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const meridian::Error& e) {
        std::cout << jobj({{"error",
                            jobj({{"type", jstr(e.kind())}, {"message", jstr(e.what())}})}})
                  << '\n';
        return 2;
    }
    std::vector<const char*> cargs;
    cargs.reserve(args.size());
    for (const auto& a : args) cargs.push_back(a.c_str());

    CLI::App app{"reduced-quaternion meridional field toolkit"};
    app.require_subcommand(1);
    Flags fl;

    auto* verify = app.add_subcommand("verify", "residual report for a candidate on a grid");
    add_common(verify, fl);
    verify->add_option("--system", fl.system, "system name (see error message for the list)")
        ->required();
    verify->add_option("--candidate", fl.candidate, "candidate spec kind:k=v,...")->required();
    verify->add_option("--grid", fl.grid, "x0=lo:hi:n,rho=lo:hi:n[,rings=k] or csv:FILE");
    verify->add_option("--alpha", fl.alpha, "system alpha");
    verify->add_option("--params", fl.params, "system params k=v,... (alpha1, alpha2, a00, ...)");
    verify->add_option("--tol", fl.tol, "pass threshold on max_abs (default 1e-6)");
    verify->add_option("--format", fl.format, "json (report) or csv (grid export)")
        
        ->check(CLI::IsMember({"json", "csv", "vtk"}));

    auto* efgc = app.add_subcommand("efg", "field-gradient tensor at a point");
    add_common(efgc, fl);
    efgc->add_option("--example", fl.example, "gallery example name")->required();
    efgc->add_option("--params", fl.params, "example params k=v,...");
    efgc->add_option("--point", fl.point, "x0,x1,x2")->required();

    auto* sing = app.add_subcommand("singular", "trace the singular set in a chart window");
    add_common(sing, fl);
    sing->add_option("--example", fl.example, "gallery example name")->required();
    sing->add_option("--params", fl.params, "example params k=v,...");
    sing->add_option("--window", fl.window, "x0=lo:hi,rho=lo:hi (default -3:3, 0.05:3)");
    sing->add_option("--res", fl.res, "grid resolution per axis")->default_val(256);
    sing->add_option("--format", fl.format, "csv polylines or json")
        
        ->check(CLI::IsMember({"json", "csv", "vtk"}));

    auto* sov = app.add_subcommand("sov", "separated-solution potential + residual grid");
    add_common(sov, fl);
    sov->add_option("--family", fl.family,
                    "theorem1 | theorem2 | euler-planar | euler-cyl | gaspt-h | gaspt-t")
        ->required();
    sov->add_option("--params", fl.params, "family params k=v,...")->required();
    sov->add_option("--grid", fl.grid, "x0=lo:hi:n,rho=lo:hi:n[,rings=k]");
    sov->add_option("--alpha", fl.alpha, "equation alpha (defaults to the family's)");
    sov->add_option("--format", fl.format, "csv or json")
        
        ->check(CLI::IsMember({"json", "csv", "vtk"}));

    auto* tr = app.add_subcommand("transform", "evaluate an integral transform at a point");
    add_common(tr, fl);
    tr->add_option("--kind", fl.kind, "lf | lf2 | gamma | ffc | ffs | ffe")->required();
    tr->add_option("--original", fl.original, "one | tau | exp-decay:a= | exp-abs:a=")
        ->default_val("one");
    tr->add_option("--point", fl.point, "x0,x1,x2")->required();
    tr->add_option("--tol", fl.tol, "quadrature absolute tolerance");
    tr->add_flag("--conjugate", fl.conjugate, "gamma only: keep the conjugate sign");

    auto* expo = app.add_subcommand("export", "structured-grid VTK of a gallery field");
    add_common(expo, fl);
    expo->add_option("--example", fl.example, "gallery example name")->required();
    expo->add_option("--params", fl.params, "example params k=v,...");
    expo->add_option("--grid", fl.grid, "x0=lo:hi:n,rho=lo:hi:n");
    expo->add_option("--format", fl.format, "vtk")
        
        ->check(CLI::IsMember({"json", "csv", "vtk"}));

    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << jobj({{"error", jobj({{"type", jstr("Usage")},
                                           {"message", jstr(e.what())}})}})
                  << '\n';
        return 2;
    }

    fl.alpha_set = (verify->parsed() && verify->count("--alpha") > 0) ||
                   (sov->parsed() && sov->count("--alpha") > 0);
    fl.tol_set = (verify->parsed() && verify->count("--tol") > 0) ||
                 (tr->parsed() && tr->count("--tol") > 0);

    try {
        if (verify->parsed()) return cmd_verify(fl);
        if (efgc->parsed()) return cmd_efg(fl);
        if (sing->parsed()) return cmd_singular(fl);
        if (sov->parsed()) return cmd_sov(fl);
        if (tr->parsed()) return cmd_transform(fl);
        if (expo->parsed()) return cmd_export(fl);
        die("Usage", "no subcommand given");
    } catch (const meridian::Error& e) {
        std::cout << jobj({{"error",
                            jobj({{"type", jstr(e.kind())}, {"message", jstr(e.what())}})}})
                  << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cout << jobj({{"error", jobj({{"type", jstr("Internal")},
                                           {"message", jstr(e.what())}})}})
                  << '\n';
        return 2;
    }
    return 2;
}
