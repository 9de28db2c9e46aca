#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "chull/error.hpp"
#include "chull/eta.hpp"
#include "chull/levi.hpp"
#include "chull/root_data.hpp"

namespace chull::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family;
    std::string rank;
    std::string sector = "integral";
    std::vector<std::string> shapes;
    std::string mu, x, nu;
    std::optional<std::string> sums;
    int so_class = 0;
    std::optional<std::int64_t> max_entry;
    bool all_shapes = false;
    std::string format;
    std::string out_path;
    int jobs = 1;
    int max_rank_cap = 6;
    bool timing = false;
};

int exit_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::Precondition:
        case ErrorCode::NormalizationRequired:
            return VerdictFalse;
        case ErrorCode::CapExceeded:
        case ErrorCode::Overflow:
            return Internal;
        default:
            return Usage;
    }
}

Entries parse_list(const std::string& text, const char* what, bool allow_empty = false) {
    Entries values;
    if (text.empty()) {
        if (allow_empty) return values;
        throw UsageError(std::string("--") + what + " is required");
    }
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        std::int64_t v = 0;
        const char* begin = item.data();
        const char* end = begin + item.size();
        if (!item.empty() && *begin == '+') ++begin;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (item.empty() || ec != std::errc() || ptr != end)
            throw UsageError(std::string("malformed --") + what + " '" + text + "': '" + std::string(item) +
                             "' is not an integer");
        values.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return values;
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) parts.push_back(item);
    return parts;
}

Family family_of(const Options& o) {
    if (o.family.empty()) throw UsageError("--family is required");
    return parse_family(o.family);
}

Sector sector_of(const Options& o, Family family) {
    const Sector s = parse_sector(o.sector);
    if (s == Sector::HalfDoubled && family != Family::D)
        throw UsageError("--sector half is only meaningful for family D");
    return s;
}

int single_rank(const Options& o) {
    if (o.rank.empty()) return 0;
    const Entries r = parse_list(o.rank, "rank");
    if (r.size() != 1) throw UsageError("--rank takes a single value here");
    return static_cast<int>(r.front());
}

// "1-4", "2,3" or "3".
std::vector<int> rank_list(const std::string& text) {
    std::vector<int> ranks;
    for (const std::string& part : split(text)) {
        const auto dash = part.find('-', 1);
        if (dash == std::string::npos) {
            ranks.push_back(static_cast<int>(parse_list(part, "rank").front()));
        } else {
            const auto lo = parse_list(part.substr(0, dash), "rank").front();
            const auto hi = parse_list(part.substr(dash + 1), "rank").front();
            for (auto r = lo; r <= hi; ++r) ranks.push_back(static_cast<int>(r));
        }
    }
    if (ranks.empty()) throw UsageError("--rank is required");
    return ranks;
}

GroupKind kind_for(const Options& o, std::size_t length) {
    const Family family = family_of(o);
    int rank = single_rank(o);
    if (rank == 0) rank = static_cast<int>(length);
    if (length != 0 && static_cast<std::size_t>(rank) != length)
        throw UsageError("--rank " + std::to_string(rank) + " does not match a vector of length " +
                         std::to_string(length));
    if (rank == 0) throw UsageError("--rank is required");
    return GroupKind::make(family, rank);
}

Coweight read_coweight(const Options& o, const std::string& text, const char* what) {
    const Entries e = parse_list(text, what);
    const GroupKind kind = kind_for(o, e.size());
    return Coweight(kind, e, sector_of(o, kind.family));
}

Coweight read_mu(const Options& o) {
    Coweight mu = read_coweight(o, o.mu, "mu");
    if (!is_dominant(mu)) throw Error(ErrorCode::NotDominant, "mu = " + mu.str() + " is not dominant");
    return mu;
}

LeviShape read_shape(const Options& o, GroupKind kind) {
    if (o.shapes.size() != 1) throw UsageError("exactly one --shape is required");
    return LeviShape::parse(kind, o.shapes.front());
}

bool json_format(const Options& o, bool default_json) {
    if (o.format.empty()) return default_json;
    if (o.format == "json") return true;
    if (o.format == "text") return false;
    throw UsageError("--format must be json or text");
}

Json entries_json(std::span<const std::int64_t> v) { return Json(std::vector<std::int64_t>(v.begin(), v.end())); }

Json rationals_json(std::span<const Rational> v) {
    Json a = Json::array();
    for (const Rational& r : v) {
        if (r.is_integer())
            a.push_back(r.num());
        else
            a.push_back(r.str());
    }
    return a;
}

std::string mark(bool ok) { return ok ? "[ok]  " : "[FAIL]"; }

std::string levi_name(const LeviShape& s) {
    std::string name;
    for (int size : s.gl_sizes()) name += (name.empty() ? "" : " x ") + std::string("GL") + std::to_string(size);
    if (s.has_so_batch()) {
        const int j = s.so_rank();
        const int dim = s.kind().family == Family::B ? 2 * j + 1 : 2 * j;
        name += (name.empty() ? "" : " x ") + std::string("SO") + std::to_string(dim);
    }
    return name.empty() ? "trivial" : name;
}

// ---------------------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
    const Coweight mu = read_mu(o);
    const Coweight x = read_coweight(o, o.x, "x");
    if (x.kind() != mu.kind() || x.sector() != mu.sector()) throw UsageError("--x and --mu have different kinds");
    const RationalVector xr = x.as_rational();
    const auto terms = leq_terms(xr, mu);
    bool inequalities = true;
    for (const auto& t : terms) inequalities = inequalities && t.holds;
    const bool cls = same_class_XG(x, mu);
    const Coweight dom = dominant_representative(x);
    const bool hull = in_hull(x, mu);
    const bool verdict = inequalities && cls && hull;

    if (json_format(o, false)) {
        Json j;
        j["schema"] = 1;
        j["kind"] = mu.kind().name();
        j["sector"] = to_string(mu.sector());
        j["x"] = entries_json(x.entries());
        j["mu"] = entries_json(mu.entries());
        Json ts = Json::array();
        for (const auto& t : terms)
            ts.push_back({{"label", t.label},
                          {"lhs", t.lhs.str()},
                          {"relation", t.relation == Relation::Equal ? "=" : "<="},
                          {"rhs", t.rhs.str()},
                          {"holds", t.holds}});
        j["inequalities"] = ts;
        j["leq"] = inequalities;
        j["same_class"] = cls;
        j["dominant_representative"] = entries_json(dom.entries());
        j["in_hull"] = hull;
        j["verdict"] = verdict;
        out << j.dump() << '\n';
    } else {
        out << "x  = " << x.str() << "\nmu = " << mu.str() << '\n';
        for (const auto& t : terms)
            out << mark(t.holds) << ' ' << t.label << ": " << t.lhs << (t.relation == Relation::Equal ? " = " : " <= ")
                << t.rhs << '\n';
        out << mark(cls) << " same class in X_G" << (cls ? "" : " (class mismatch)") << '\n';
        out << mark(hull) << " in Conv(W mu) via dominant representative " << dom.str() << '\n';
        out << "verdict: " << (verdict ? "true" : "false") << '\n';
    }
    return verdict ? Ok : VerdictFalse;
}

int cmd_class(const Options& o, std::ostream& out) {
    const Coweight x = read_coweight(o, o.x, "x");
    const LeviShape shape = read_shape(o, x.kind());
    const XMClass c = class_of(shape, x);
    if (json_format(o, false)) {
        Json j = class_json(c);
        j["x"] = entries_json(x.entries());
        out << j.dump() << '\n';
    } else {
        const ClassData d = c.data();
        out << "shape    " << shape.str() << "\nsums     " << format_vector(d.sums) << "\nso_class " << d.so_class
            << "\nlift     " << c.canonical_lift.str() << '\n';
    }
    return Ok;
}

int cmd_project(const Options& o, std::ostream& out) {
    const Coweight x = read_coweight(o, o.x, "x");
    const LeviShape shape = read_shape(o, x.kind());
    const LeviPoint p = project(shape, x);
    const RationalVector full = p.expand();
    if (json_format(o, false)) {
        Json j{{"schema", 1}, {"shape", shape.str()}, {"x", entries_json(x.entries())}};
        j["averages"] = rationals_json(p.averages);
        j["expanded"] = rationals_json(full);
        j["dominant"] = is_dominant(x.family(), full);
        out << j.dump() << '\n';
    } else {
        out << "averages " << format_vector(p.averages) << "\nexpanded " << format_vector(full) << '\n';
    }
    return Ok;
}

int cmd_lift(const Options& o, std::ostream& out) {
    const GroupKind kind = kind_for(o, 0);
    const Sector sector = sector_of(o, kind.family);
    const LeviShape shape = read_shape(o, kind);
    if (!o.sums) throw UsageError("--sums is required");
    const Entries sums = parse_list(*o.sums, "sums", true);
    if (static_cast<int>(sums.size()) != shape.batch_count())
        throw UsageError("shape " + shape.str() + " has " + std::to_string(shape.batch_count()) + " GL batches, got " +
                         std::to_string(sums.size()) + " sums");
    const XMClass c{shape, minuscule_lift(shape, sector, sums, o.so_class)};
    if (json_format(o, false))
        out << class_json(c).dump() << '\n';
    else
        out << c.canonical_lift.str() << '\n';
    return Ok;
}

int cmd_eta(const Options& o, std::ostream& out) {
    const Coweight nu = read_coweight(o, o.nu, "nu");
    const LeviShape shape = read_shape(o, nu.kind());
    std::optional<Coweight> mu;
    if (!o.mu.empty()) {
        mu = read_mu(o);
        if (mu->kind() != nu.kind()) throw UsageError("--mu and --nu have different kinds");
    }
    const EtaResult r = build_eta(shape, nu);
    const auto firsts = batch_first_entries(shape, nu);
    auto checks = eta_postconditions(shape, nu, r, mu);
    checks.insert(checks.begin(), NamedCheck{"batch first entries nonincreasing", r.projection_dominant,
                                             std::is_sorted(firsts.begin(), firsts.end(), std::greater<>())});
    bool ok = true;
    for (const auto& c : checks) ok = ok && (!c.applicable || c.passed);
    if (!ok && !r.projection_dominant)
        throw Error(ErrorCode::NormalizationRequired,
                    "nu_M = " + format_vector(project(shape, nu).expand()) +
                        " is not G-dominant and the construction's conclusions fail; choose a Borel making nu_M "
                        "dominant (the Levi shape changes with it), or use the brute-force oracle (pmu, verify)");

    if (json_format(o, false)) {
        Json j{{"schema", 1}, {"kind", nu.kind().name()}, {"sector", to_string(nu.sector())}, {"shape", shape.str()}};
        j["nu"] = entries_json(nu.entries());
        j["first_entries"] = firsts;
        j["projection_dominant"] = r.projection_dominant;
        j["eta_prime"] = entries_json(r.eta_prime.entries());
        if (nu.half()) {
            j["eta_double_prime"] = entries_json(r.eta_double_prime.entries());
            j["sign_flips"] = r.sign_flips;
        }
        j["eta"] = entries_json(r.eta.entries());
        j["L"] = r.coarser_shape.str();
        j["swapped"] = r.swapped;
        Json cs = Json::array();
        for (const auto& c : checks) cs.push_back({{"name", c.name}, {"applicable", c.applicable}, {"passed", c.passed}});
        j["checks"] = cs;
        j["ok"] = ok;
        out << j.dump() << '\n';
    } else {
        out << "nu   = " << nu.str() << "  (shape " << shape.str() << ")\n";
        if (!r.projection_dominant)
            out << "note: nu_M = " << format_vector(project(shape, nu).expand())
                << " is not G-dominant, so the order lemma does not apply; the construction is run as stated\n";
        out << "eta' = " << r.eta_prime.str() << '\n';
        if (nu.half()) out << "eta''= " << r.eta_double_prime.str() << "  (" << r.sign_flips << " sign flips)\n";
        out << "eta  = " << r.eta.str() << (r.swapped ? "  (swap applied)" : "") << '\n';
        out << "L    = " << r.coarser_shape.str() << "  (" << levi_name(r.coarser_shape) << ")\n";
        for (const auto& c : checks)
            out << (c.applicable ? mark(c.passed) : std::string("[n/a] ")) << ' ' << c.name << '\n';
    }
    return ok ? Ok : VerdictFalse;
}

int cmd_pmu(const Options& o, std::ostream& out) {
    const Coweight mu = read_mu(o);
    const auto points = enumerate_Pmu(mu, EnumerationLimits{o.max_rank_cap});
    if (json_format(o, false)) {
        Json pts = Json::array();
        for (const auto& p : points) pts.push_back(entries_json(p.entries()));
        Json j{{"schema", 1}, {"kind", mu.kind().name()}, {"sector", to_string(mu.sector())}};
        j["mu"] = entries_json(mu.entries());
        j["count"] = points.size();
        j["points"] = pts;
        out << j.dump() << '\n';
    } else {
        for (const auto& p : points) out << p.str() << '\n';
        out << points.size() << " points\n";
    }
    return Ok;
}

int stream_sweep(const Options& o, const SweepConfig& config, bool with_checks, std::ostream& out) {
    const bool json = json_format(o, true);
    std::ofstream file;
    if (!o.out_path.empty()) {
        file.open(o.out_path, std::ios::binary | std::ios::trunc);
        if (!file) throw UsageError("cannot open --out " + o.out_path);
    }
    std::ostream& sink = o.out_path.empty() ? out : file;
    Digest digest;
    const SweepOutcome result = sweep(config, [&](const InstanceOutcome& r) {
        const std::string canonical = instance_json(r, with_checks, false).dump();
        digest.add_line(canonical);
        if (json) {
            sink << (o.timing ? instance_json(r, with_checks, true).dump() : canonical) << '\n';
        } else {
            sink << r.kind.name() << ' ' << to_string(r.sector) << " shape " << r.shape << " mu "
                 << format_vector(r.mu) << ": ";
            if (r.error) {
                sink << "error " << *r.error;
            } else {
                sink << (r.report->equal ? "equal" : "NOT EQUAL") << " (" << r.report->lhs_classes.size()
                     << " classes)";
            }
            sink << '\n';
        }
        sink.flush();
    });
    const SweepSummary& s = result.summary;
    if (json) {
        sink << summary_json(s, digest.hex()).dump() << '\n';
    } else {
        sink << s.instances << " instances, " << s.equal << " equal, " << s.unequal << " unequal, " << s.errors
             << " errors";
        if (with_checks)
            sink << "; batch ends " << s.batch_end_failures << '/' << s.batch_end_checked << ", eta " << s.eta_failures
                 << '/' << s.eta_checked << ", end-to-end " << s.end_to_end_failures << '/' << s.end_to_end_checked
                 << " failures";
        sink << "; digest " << digest.hex() << '\n';
    }
    if (s.errors) return Internal;
    if (!s.all_passed()) return VerdictFalse;
    return Ok;
}

int cmd_verify(const Options& o, std::ostream& out) {
    SweepConfig config;
    config.extra_checks = false;
    config.jobs = o.jobs;
    config.limits.max_rank = o.max_rank_cap;
    const Family family = family_of(o);
    config.families = {family};
    config.sectors = {sector_of(o, family)};
    if (!o.mu.empty()) {
        const Coweight mu = read_mu(o);
        config.mus = {mu};
        config.ranks = {mu.rank()};
    } else {
        if (!o.max_entry) throw UsageError("give --mu or --max-entry");
        config.max_entry = *o.max_entry;
        config.ranks = {kind_for(o, 0).rank};
    }
    if (o.all_shapes == !o.shapes.empty()) throw UsageError("give either --shape or --all-shapes");
    if (!o.all_shapes) config.shapes = o.shapes;
    return stream_sweep(o, config, false, out);
}

int cmd_sweep(const Options& o, std::ostream& out) {
    SweepConfig config;
    config.jobs = o.jobs;
    config.limits.max_rank = o.max_rank_cap;
    for (const std::string& f : split(o.family.empty() ? "A,B,D" : o.family)) config.families.push_back(parse_family(f));
    config.ranks = rank_list(o.rank);
    config.sectors.clear();
    for (const std::string& s : split(o.sector)) config.sectors.push_back(parse_sector(s));
    config.max_entry = o.max_entry.value_or(1);
    if (!o.shapes.empty()) config.shapes = o.shapes;
    return stream_sweep(o, config, true, out);
}

void add_options(CLI::App* app, Options& o, const std::vector<std::string>& which) {
    auto has = [&](const char* name) { return std::find(which.begin(), which.end(), name) != which.end(); };
    app->add_option("--family", o.family, has("families") ? "families, comma separated (A,B,D)" : "A, B or D");
    app->add_option("--rank", o.rank, has("families") ? "ranks, e.g. 2-4 or 2,3" : "rank n");
    app->add_option("--sector", o.sector, "integral or half (family D)");
    app->add_option("--format", o.format, "json or text");
    if (has("shape")) app->add_option("--shape", o.shapes, "Levi shape such as 2,1,1;2");
    if (has("mu")) app->add_option("--mu", o.mu, "dominant coweight, comma separated");
    if (has("x")) app->add_option("--x", o.x, "coweight, comma separated");
    if (has("nu")) app->add_option("--nu", o.nu, "coweight, comma separated");
    if (has("sums")) {
        app->add_option("--sums", o.sums, "GL batch sums");
        app->add_option("--so-class", o.so_class, "SO-factor residue");
    }
    if (has("grid")) {
        app->add_option("--max-entry", o.max_entry, "entry bound for the mu grid");
        app->add_option("--out", o.out_path, "write the report here instead of stdout");
        app->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
        app->add_flag("--timing", o.timing, "include per-instance millis");
    }
    if (has("all-shapes")) app->add_flag("--all-shapes", o.all_shapes, "every valid Levi shape");
    if (has("cap")) app->add_option("--max-rank-cap", o.max_rank_cap, "largest rank the enumerator accepts");
}

}  // namespace

Json class_json(const XMClass& c) {
    const ClassData d = c.data();
    Json j;
    j["sums"] = d.sums;
    j["so_class"] = d.so_class;
    j["lift"] = entries_json(c.canonical_lift.entries());
    return j;
}

Json instance_json(const InstanceOutcome& r, bool with_checks, bool with_timing) {
    Json j;
    j["schema"] = 1;
    j["kind"] = r.kind.name();
    j["sector"] = to_string(r.sector);
    j["shape"] = r.shape;
    j["mu"] = r.mu;
    if (r.error) {
        j["error"] = *r.error;
        return j;
    }
    const VerificationReport& rep = *r.report;
    Json lhs = Json::array(), rhs = Json::array(), witnesses = Json::array();
    for (const auto& c : rep.lhs_classes) lhs.push_back(entries_json(c.canonical_lift.entries()));
    for (const auto& c : rep.rhs_classes) rhs.push_back(entries_json(c.canonical_lift.entries()));
    for (const auto& [c, nu] : rep.witnesses)
        witnesses.push_back({{"class", entries_json(c.canonical_lift.entries())}, {"nu", entries_json(nu.entries())}});
    Json missing_lhs = Json::array(), missing_rhs = Json::array();
    for (const auto& c : rep.missing_from_lhs) missing_lhs.push_back(class_json(c));
    for (const auto& c : rep.missing_from_rhs) missing_rhs.push_back(class_json(c));
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["equal"] = rep.equal;
    j["diffs"] = {{"missing_from_lhs", missing_lhs}, {"missing_from_rhs", missing_rhs}};
    j["witnesses"] = witnesses;
    if (with_checks)
        j["checks"] = {{"batch_ends", {r.batch_end_checked, r.batch_end_failures}},
                       {"eta", {r.eta_checked, r.eta_failures}},
                       {"end_to_end", {r.end_to_end_checked, r.end_to_end_failures}}};
    if (with_timing)
        j["millis"] = std::chrono::duration<double, std::milli>(rep.elapsed).count();
    else
        j["millis"] = nullptr;
    return j;
}

Json summary_json(const SweepSummary& s, const std::string& digest) {
    Json j;
    j["schema"] = 1;
    j["summary"] = {{"instances", s.instances},
                    {"equal", s.equal},
                    {"unequal", s.unequal},
                    {"errors", s.errors},
                    {"batch_ends", {s.batch_end_checked, s.batch_end_failures}},
                    {"eta", {s.eta_checked, s.eta_failures}},
                    {"end_to_end", {s.end_to_end_checked, s.end_to_end_failures}}};
    j["digest"] = digest;
    return j;
}

void Digest::add_line(std::string_view line) {
    auto feed = [this](unsigned char c) {
        state_ ^= c;
        state_ *= 0x100000001b3ull;
    };
    for (char c : line) feed(static_cast<unsigned char>(c));
    feed('\n');
}

std::string Digest::hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coweight combinatorics of Levi images in split classical groups", "chull"};
    app.require_subcommand(1);
    Options o;
    using Handler = int (*)(const Options&, std::ostream&);
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto add = [&](const char* name, const char* help, Handler h, std::vector<std::string> which) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_options(sub, o, which);
        commands.emplace_back(sub, h);
    };
    add("check", "evaluate x <= mu, the X_G class condition and hull membership", cmd_check, {"mu", "x"});
    add("class", "X_M class of a coweight", cmd_class, {"shape", "x"});
    add("project", "batch averages nu_M", cmd_project, {"shape", "x"});
    add("lift", "minuscule lift of X_M class data", cmd_lift, {"shape", "sums"});
    add("eta", "reordering construction and its postconditions", cmd_eta, {"shape", "nu", "mu"});
    add("pmu", "lattice points of P_mu", cmd_pmu, {"mu", "cap"});
    add("verify", "set equality of the Levi image, per instance", cmd_verify,
        {"shape", "mu", "grid", "all-shapes", "cap"});
    add("sweep", "verification plus property checks over a grid", cmd_sweep,
        {"families", "shape", "grid", "cap"});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : Usage;
    }

    for (const auto& [sub, handler] : commands) {
        if (!sub->parsed()) continue;
        try {
            return handler(o, out);
        } catch (const UsageError& e) {
            err << "error: " << e.what() << '\n';
            return Usage;
        } catch (const Error& e) {
            err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
            return exit_for(e.code());
        } catch (const std::exception& e) {
            err << "internal error: " << e.what() << '\n';
            return Internal;
        }
    }
    return Usage;
}

}  // namespace chull::cli
