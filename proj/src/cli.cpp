#include "dmass/cli.hpp"

#include "dmass/csa.hpp"
#include "dmass/curve.hpp"
#include "dmass/dieudonne.hpp"
#include "dmass/mass.hpp"
#include "dmass/orders.hpp"
#include "dmass/random.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dmass::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Schema checks

std::optional<std::uint64_t> as_uint(const json& j) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v >= 0) return static_cast<std::uint64_t>(v);
        return std::nullopt;
    }
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s.empty() || s.size() > 19 || !std::all_of(s.begin(), s.end(), ::isdigit)) {
            return std::nullopt;
        }
        return std::stoull(s);
    }
    return std::nullopt;
}

class Checker {
public:
    std::vector<FieldIssue> issues;

    void fail(const std::string& path, const std::string& message) { issues.push_back({path, message}); }

    const json* member(const json& obj, const std::string& key, const std::string& path, bool required) {
        if (!obj.is_object()) return nullptr;
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(join(path, key), "missing required field");
            return nullptr;
        }
        return &*it;
    }

    std::optional<std::uint64_t> uint(const json& obj, const std::string& key, const std::string& path,
                                      std::uint64_t lo, std::uint64_t hi, bool required = true) {
        const json* j = member(obj, key, path, required);
        if (!j) return std::nullopt;
        const auto v = as_uint(*j);
        if (!v) {
            fail(join(path, key), "expected a non-negative integer");
            return std::nullopt;
        }
        if (*v < lo || *v > hi) {
            fail(join(path, key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::vector<std::uint64_t>> uint_list(const json& obj, const std::string& key,
                                                        const std::string& path, std::uint64_t hi,
                                                        bool required = true) {
        const json* j = member(obj, key, path, required);
        if (!j) return std::nullopt;
        if (!j->is_array()) {
            fail(join(path, key), "expected an array of integers");
            return std::nullopt;
        }
        std::vector<std::uint64_t> out;
        bool ok = true;
        for (std::size_t i = 0; i < j->size(); ++i) {
            const auto v = as_uint((*j)[i]);
            const std::string p = join(path, key) + "[" + std::to_string(i) + "]";
            if (!v) {
                fail(p, "expected a non-negative integer");
                ok = false;
            } else if (*v > hi) {
                fail(p, "must be at most " + std::to_string(hi));
                ok = false;
            } else {
                out.push_back(*v);
            }
        }
        if (!ok) return std::nullopt;
        return out;
    }

    void only(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
        if (!obj.is_object()) return;
        for (const auto& [k, v] : obj.items()) {
            if (std::find_if(keys.begin(), keys.end(), [&](const char* s) { return k == s; }) == keys.end()) {
                fail(join(path, k), "unknown field");
            }
        }
    }

    bool object(const json& j, const std::string& path) {
        if (!j.is_object()) {
            fail(path, "expected an object");
            return false;
        }
        return true;
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }
};

std::optional<std::uint64_t> check_q(Checker& c, const json& obj, const std::string& path) {
    const auto q = c.uint(obj, "q", path, 2, 1ULL << 20);
    if (!q) return std::nullopt;
    if (!prime_power(*q)) {
        c.fail(Checker::join(path, "q"), "must be a prime power");
        return std::nullopt;
    }
    return q;
}

void check_curve(Checker& c, const json& j, const std::string& path) {
    if (!c.object(j, path)) return;
    const auto q = check_q(c, j, path);
    const json* kind = c.member(j, "kind", path, true);
    if (!kind) return;
    if (!kind->is_string()) {
        c.fail(path + ".kind", "expected a string");
        return;
    }
    const auto& k = kind->get_ref<const std::string&>();
    const std::uint64_t hi = q ? *q - 1 : ~0ULL;
    if (k == "projective_line") {
        c.only(j, path, {"kind", "q"});
    } else if (k == "elliptic") {
        c.only(j, path, {"kind", "q", "a"});
        const auto a = c.uint_list(j, "a", path, hi);
        if (a && a->size() != 5) c.fail(path + ".a", "expected five coefficients a1, a2, a3, a4, a6");
    } else if (k == "hyperelliptic") {
        c.only(j, path, {"kind", "q", "f", "h", "genus", "infinity"});
        c.uint_list(j, "f", path, hi);
        c.uint_list(j, "h", path, hi, false);
        c.uint(j, "genus", path, 1, 8);
        c.uint(j, "infinity", path, 0, 2, false);
    } else {
        c.fail(path + ".kind", "must be one of projective_line, elliptic, hyperelliptic");
    }
}

void check_place(Checker& c, const json& j, const std::string& path) {
    if (!c.object(j, path)) return;
    c.only(j, path, {"id", "degree"});
    const json* id = c.member(j, "id", path, true);
    if (id && (!id->is_string() || id->get_ref<const std::string&>().empty())) {
        c.fail(path + ".id", "expected a nonempty string");
    }
    c.uint(j, "degree", path, 1, 64);
}

void check_rational(Checker& c, const json& j, const std::string& path) {
    try {
        rational_from_json(j);
    } catch (const std::exception& err) {
        c.fail(path, err.what());
    }
}

void check_type(Checker& c, const json& obj, const std::string& path, std::optional<std::uint64_t> d) {
    const auto f = c.uint_list(obj, "f", path, 64);
    if (!f || !d) return;
    if (f->size() != *d) c.fail(Checker::join(path, "f"), "must have d entries");
    if (std::accumulate(f->begin(), f->end(), std::uint64_t{0}) != *d) {
        c.fail(Checker::join(path, "f"), "entries must sum to d");
    }
}

void check_local(Checker& c, const json& j, bool centralizer) {
    c.only(j, "", {"d", "f", "q", "N"});
    const auto d = c.uint(j, "d", "", 1, centralizer ? 6 : 8);
    check_type(c, j, "", d);
    const auto q = check_q(c, j, "");
    c.uint(j, "N", "", centralizer ? 2 : 1, 8);
    if (q && d && centralizer) {
        const auto pe = prime_power(*q);
        if (pe && pe->second * 2 * *d > kMaxFieldDegree) {
            c.fail("q", "F_{q^(2d)} exceeds the supported field degree");
        }
    }
    if (q && !centralizer) {
        const auto pe = prime_power(*q);
        if (pe && pe->second > kMaxFieldDegree) c.fail("q", "field degree too large");
    }
}

void check_mass(Checker& c, const json& j) {
    c.only(j, "", {"curve", "inf", "o", "d", "invariants", "f", "level"});
    if (const json* curve = c.member(j, "curve", "", true)) check_curve(c, *curve, "curve");
    if (const json* p = c.member(j, "inf", "", true)) check_place(c, *p, "inf");
    if (const json* p = c.member(j, "o", "", true)) check_place(c, *p, "o");
    const auto d = c.uint(j, "d", "", 1, 16);
    check_type(c, j, "", d);
    if (const json* inv = c.member(j, "invariants", "", true)) {
        if (!inv->is_array()) {
            c.fail("invariants", "expected an array");
        } else {
            for (std::size_t i = 0; i < inv->size(); ++i) {
                const std::string p = "invariants[" + std::to_string(i) + "]";
                const json& e = (*inv)[i];
                if (!c.object(e, p)) continue;
                c.only(e, p, {"place", "value"});
                if (const json* pl = c.member(e, "place", p, true)) check_place(c, *pl, p + ".place");
                if (const json* v = c.member(e, "value", p, true)) check_rational(c, *v, p + ".value");
            }
        }
    }
    if (const json* level = c.member(j, "level", "", false)) {
        if (!level->is_array()) {
            c.fail("level", "expected an array");
        } else {
            for (std::size_t i = 0; i < level->size(); ++i) {
                const std::string p = "level[" + std::to_string(i) + "]";
                const json& e = (*level)[i];
                if (!c.object(e, p)) continue;
                c.only(e, p, {"place", "e"});
                if (const json* pl = c.member(e, "place", p, true)) check_place(c, *pl, p + ".place");
                c.uint(e, "e", p, 1, 16);
            }
        }
    }
}

void check_zeta(Checker& c, const json& j) {
    c.only(j, "", {"curve", "special_values"});
    if (const json* curve = c.member(j, "curve", "", true)) check_curve(c, *curve, "curve");
    const auto sv = c.uint_list(j, "special_values", "", 64, false);
    if (sv) {
        for (std::size_t i = 0; i < sv->size(); ++i) {
            if ((*sv)[i] == 0) c.fail("special_values[" + std::to_string(i) + "]", "must be positive");
        }
    }
}

// ---------------------------------------------------------------------------
// Builders (payload already schema-checked)

std::uint64_t get_u(const json& j, const char* key) { return *as_uint(j.at(key)); }

std::vector<unsigned> get_list(const json& j, const char* key) {
    std::vector<unsigned> out;
    if (!j.contains(key)) return out;
    for (const auto& v : j.at(key)) out.push_back(static_cast<unsigned>(*as_uint(v)));
    return out;
}

FieldSpec base_field(std::uint64_t q) {
    const auto pe = prime_power(q);
    return make_field(pe->first, pe->second, 1);
}

CurveModel build_curve(const json& j) {
    const FieldSpec k = base_field(get_u(j, "q"));
    const std::string kind = j.at("kind").get<std::string>();
    auto poly = [&](const char* key) {
        FqPoly out;
        for (unsigned v : get_list(j, key)) out.push_back(k.from_index(v));
        while (!out.empty() && out.back().is_zero()) out.pop_back();
        return out;
    };
    if (kind == "projective_line") return CurveModel::projective_line(k);
    if (kind == "elliptic") {
        const auto a = get_list(j, "a");
        return CurveModel::elliptic(k, {k.from_index(a[0]), k.from_index(a[1]), k.from_index(a[2]),
                                        k.from_index(a[3]), k.from_index(a[4])});
    }
    std::optional<unsigned> inf;
    if (j.contains("infinity")) inf = static_cast<unsigned>(get_u(j, "infinity"));
    return CurveModel::hyperelliptic(k, poly("f"), poly("h"), static_cast<unsigned>(get_u(j, "genus")), inf);
}

PlaceRef build_place(const json& j) {
    return {j.at("id").get<std::string>(), static_cast<unsigned>(get_u(j, "degree"))};
}

MassConfig build_mass_config(const json& j) {
    const ZetaData zeta = compute_zeta(build_curve(j.at("curve")));
    const unsigned d = static_cast<unsigned>(get_u(j, "d"));
    InvariantList inv;
    for (const auto& e : j.at("invariants")) inv.emplace_back(build_place(e.at("place")), rational_from_json(e.at("value")));
    std::vector<LevelPlace> level;
    if (j.contains("level")) {
        for (const auto& e : j.at("level")) {
            level.push_back({build_place(e.at("place")), static_cast<unsigned>(get_u(e, "e"))});
        }
    }
    AlgebraSpec algebra = [&] {
        try {
            return AlgebraSpec(d, inv);
        } catch (const AlgebraError& err) {
            throw MassError("invariants", err.what());
        }
    }();
    return {zeta, build_place(j.at("inf")), build_place(j.at("o")), std::move(algebra), get_list(j, "f"), level};
}

json big(const BigInt& v) { return to_string(v); }

json type_json(const TypeVector& f) { return json(f); }

// ---------------------------------------------------------------------------
// Commands; each returns (result, verified).

std::pair<json, bool> run_zeta(const json& p) {
    const CurveModel curve = build_curve(p.at("curve"));
    const ZetaData z = compute_zeta(curve);
    json r;
    r["q"] = big(BigInt(z.q));
    r["genus"] = z.g;
    json counts = json::array();
    const unsigned upto = std::max(2U, 2 * z.g);
    for (unsigned m = 1; m <= upto; ++m) counts.push_back(big(count_from_numerator(z, m)));
    r["point_counts"] = counts;
    json num = json::array();
    for (const auto& c : z.numerator) num.push_back(big(c));
    r["numerator"] = num;
    r["class_number"] = big(z.class_number);
    std::vector<unsigned> special = get_list(p, "special_values");
    if (special.empty()) special = {1};
    json sv = json::array();
    for (unsigned i : special) sv.push_back({{"i", i}, {"value", rational_to_json(zeta_special(z, i))}});
    r["special_values"] = sv;
    json places = json::array();
    for (unsigned deg = 1; deg <= 3; ++deg) places.push_back({{"degree", deg}, {"count", big(places_of_degree(z, deg))}});
    r["places_of_degree"] = places;
    bool fe = true;
    const BigInt q(z.q);
    for (unsigned j = 0; j <= 2 * z.g; ++j) {
        fe = fe && z.numerator[2 * z.g - j] * ipow(q, j) == z.numerator[j] * ipow(q, z.g);
    }
    r["functional_equation"] = fe;
    bool agree = true;
    for (unsigned m = 1; m <= z.counts.size(); ++m) agree = agree && z.counts[m - 1] == count_from_numerator(z, m);
    r["counts_match_numerator"] = agree;
    return {r, fe && agree};
}

std::pair<json, bool> run_order(const json& p, std::uint64_t seed) {
    const unsigned d = static_cast<unsigned>(get_u(p, "d"));
    const TypeVector f = get_list(p, "f");
    const TruncatedDVR R(base_field(get_u(p, "q")), static_cast<unsigned>(get_u(p, "N")));
    const BlockOrder order(f, R);
    json r;
    r["d"] = d;
    r["block_order_dimension"] = order.dimension();
    bool ok = true;
    if (R.N >= 2) {
        const LatticeChain chain = standard_chain(f, R);
        const TypeVector t = type_of_chain(chain);
        const TypeVector t2 = type_of_chain_by_residue_rank(chain);
        const auto stab = chain_stabilizer(chain);
        const bool contained = std::all_of(stab.begin(), stab.end(), [&](const SeriesMatrix& g) { return order.contains(g); });
        const bool equal = stab.size() == order.dimension() && contained && fq_span_contains(stab, order.basis());
        r["chain"] = {{"type", type_json(t)}, {"residue_rank_type", type_json(t2)},
                      {"stabilizer_dimension", stab.size()}, {"stabilizer_equals_block_order", equal}};
        ok = ok && t == f && t2 == f && equal;
    }
    const ClosureReport cl = closure_test(order, seed);
    r["closure"] = {{"contains_identity", cl.contains_identity},
                    {"closed_under_addition", cl.closed_under_addition},
                    {"closed_under_multiplication", cl.closed_under_multiplication},
                    {"exhaustive", cl.exhaustive},
                    {"trials", cl.trials}};
    const ConjugationCertificate cc = conjugate_type(f, R);
    r["conjugation"] = {{"to", type_json(cc.to)}, {"perm", cc.perm}, {"eps", cc.eps}, {"verified", cc.verified}};
    ok = ok && cl.ok() && cc.verified;
    return {r, ok};
}

std::pair<json, bool> run_centralizer(const json& p) {
    const unsigned d = static_cast<unsigned>(get_u(p, "d"));
    const unsigned N = static_cast<unsigned>(get_u(p, "N"));
    const FormalEmbedding e = build_embedding(d, get_list(p, "f"), get_u(p, "q"), d * N);
    const CentralizerBasis c = centralizer_basis(e);
    const BlockOrderCertificate cert = match_block_order(c, e);
    const bool relations = embedding_relations_hold(e);
    json r;
    r["T"] = e.T;
    r["working_precision"] = c.guard;
    r["dimension"] = c.basis.size();
    r["expected_dimension"] = c.expected_dimension;
    r["closed_under_products"] = c.closed_under_products;
    r["contains_identity"] = c.contains_identity;
    r["embedding_relations"] = relations;
    r["certificate"] = {{"valid", cert.valid()},
                        {"images_in_order", cert.images_in_order},
                        {"bijective", cert.bijective},
                        {"anti_multiplicative", cert.anti_multiplicative},
                        {"pairs_checked", cert.pairs_checked},
                        {"pairs_matched", cert.pairs_matched},
                        {"perm", cert.twist.perm},
                        {"eps", cert.twist.eps}};
    const bool ok = relations && c.closed_under_products && c.contains_identity &&
                    c.basis.size() == c.expected_dimension && cert.valid();
    return {r, ok};
}

json mass_json(const MassReport& m) {
    json r;
    r["d"] = m.d;
    r["q"] = big(BigInt(m.q));
    r["h_of_A"] = big(m.h_of_A);
    r["T_super_o"] = big(m.t_super_o);
    r["T_sub_o"] = rational_to_json(m.t_sub_o);
    r["T_sub_o_integral"] = m.t_sub_o_integral;
    r["zeta_product"] = rational_to_json(m.zeta_product);
    r["mass"] = rational_to_json(m.mass);
    r["lower_bound"] = rational_to_json(m.lower_bound);
    r["upper_bound"] = rational_to_json(m.upper_bound);
    r["extrapolated"] = m.extrapolated;
    if (m.extrapolated) r["note"] = "deg(inf) > 1: closed form evaluated beyond its explicit range";
    if (m.d_of_n) r["d_of_n"] = big(*m.d_of_n);
    if (m.singular_count) r["singular_count"] = rational_to_json(*m.singular_count);
    if (m.identity_holds) r["identity_holds"] = *m.identity_holds;
    return r;
}

std::pair<json, bool> run_mass(const json& p, bool singular) {
    const MassConfig c = build_mass_config(p);
    const MassReport m = singular ? singular_report(c) : mass(c);
    const bool ok = m.mass > Rational(0) && m.t_sub_o_integral && (!m.identity_holds || *m.identity_holds);
    return {mass_json(m), ok};
}

json envelope(const RunConfig& cfg, std::uint64_t seed) {
    json r;
    r["tool"] = kToolName;
    r["version"] = kVersion;
    r["command"] = cfg.command;
    r["seed"] = seed;
    r["config"] = cfg.payload;
    return r;
}

json issues_json(const std::vector<FieldIssue>& issues) {
    json out = json::array();
    for (const auto& i : issues) out.push_back({{"path", i.path}, {"message", i.message}});
    return out;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den") && j["num"].is_string()) {
        const std::string den = j["den"].get<std::string>();
        out.emplace_back(prefix, j["num"].get<std::string>() + (den == "1" ? "" : "/" + den));
    } else if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); })) {
        std::string s = "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) s += ", ";
            s += j[i].is_string() ? j[i].get<std::string>() : j[i].dump();
        }
        out.emplace_back(prefix, s + "]");
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"zeta", "order", "centralizer", "mass", "singular"};
    return names;
}

std::vector<FieldIssue> validate_payload(const std::string& command, const json& payload) {
    Checker c;
    if (!payload.is_object()) {
        c.fail("", "config must be a JSON object");
        return c.issues;
    }
    if (command == "zeta") {
        check_zeta(c, payload);
    } else if (command == "order") {
        check_local(c, payload, false);
    } else if (command == "centralizer") {
        check_local(c, payload, true);
    } else if (command == "mass" || command == "singular") {
        check_mass(c, payload);
    } else {
        c.fail("command", "unknown command '" + command + "'");
    }
    return c.issues;
}

RunResult run(const RunConfig& cfg) {
    const std::uint64_t seed = cfg.seed.value_or(kDefaultSeed);
    RunResult out;
    out.report = envelope(cfg, seed);
    const auto issues = validate_payload(cfg.command, cfg.payload);
    if (!issues.empty()) {
        out.exit_code = 2;
        out.report["status"] = "invalid";
        out.report["errors"] = issues_json(issues);
        return out;
    }
    auto invalid = [&](const std::string& path, const std::string& message) {
        out.exit_code = 2;
        out.report["status"] = "invalid";
        out.report["errors"] = issues_json({{path, message}});
    };
    try {
        std::pair<json, bool> res;
        if (cfg.command == "zeta") {
            res = run_zeta(cfg.payload);
        } else if (cfg.command == "order") {
            res = run_order(cfg.payload, seed);
        } else if (cfg.command == "centralizer") {
            res = run_centralizer(cfg.payload);
        } else {
            res = run_mass(cfg.payload, cfg.command == "singular");
        }
        out.report["result"] = res.first;
        out.report["status"] = res.second ? "ok" : "failed";
        out.exit_code = res.second ? 0 : 1;
    } catch (const MassError& err) {
        invalid(err.path, err.what());
    } catch (const CurveError& err) {
        invalid("curve", err.what());
    } catch (const FieldError& err) {
        invalid("q", err.what());
    } catch (const AlgebraError& err) {
        invalid("invariants", err.what());
    } catch (const OrderError& err) {
        invalid("f", err.what());
    } catch (const DieudonneError& err) {
        invalid("", err.what());
    } catch (const std::exception& err) {
        out.exit_code = 1;
        out.report["status"] = "error";
        out.report["errors"] = issues_json({{"", err.what()}});
    }
    return out;
}

std::vector<FieldIssue> validate_report(const json& report) {
    Checker c;
    if (!c.object(report, "")) return c.issues;
    c.only(report, "", {"tool", "version", "command", "seed", "config", "result", "status", "errors"});
    for (const char* key : {"tool", "version", "command", "status"}) {
        const json* v = c.member(report, key, "", true);
        if (v && !v->is_string()) c.fail(key, "expected a string");
    }
    c.uint(report, "seed", "", 0, ~0ULL);
    const json* cfg = c.member(report, "config", "", true);
    const json* cmd = c.member(report, "command", "", true);
    const json* status = c.member(report, "status", "", true);
    if (!cfg || !cmd || !cmd->is_string() || !status || !status->is_string()) return c.issues;
    const std::string st = status->get<std::string>();
    if (st == "ok" || st == "failed") {
        for (auto& i : validate_payload(cmd->get<std::string>(), *cfg)) c.issues.push_back({"config." + i.path, i.message});
        const json* res = c.member(report, "result", "", true);
        if (res && !res->is_object()) c.fail("result", "expected an object");
    } else {
        const json* errs = c.member(report, "errors", "", true);
        if (errs && !errs->is_array()) c.fail("errors", "expected an array");
    }
    return c.issues;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

std::string render_table(const json& report) {
    std::vector<std::pair<std::string, std::string>> rows;
    for (const char* key : {"tool", "version", "command", "seed", "status"}) {
        if (report.contains(key)) flatten(report[key], key, rows);
    }
    if (report.contains("result")) flatten(report["result"], "", rows);
    if (report.contains("errors")) {
        for (const auto& e : report["errors"]) {
            rows.emplace_back("error " + e.value("path", std::string()), e.value("message", std::string()));
        }
    }
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    std::ostringstream os;
    for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << "\n";
    return os.str();
}

json rational_to_json(const Rational& r) {
    return {{"num", to_string(r.num())}, {"den", to_string(r.den())}};
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(parse_bigint(s));
        return Rational::from_strings(s.substr(0, slash), s.substr(slash + 1));
    }
    if (j.is_object() && j.contains("num") && j.contains("den") && j["num"].is_string() &&
        j["den"].is_string() && j.size() == 2) {
        return Rational::from_strings(j["num"].get<std::string>(), j["den"].get<std::string>());
    }
    throw std::invalid_argument("expected a rational: {\"num\": \"a\", \"den\": \"b\"}, \"a/b\" or an integer");
}

}  // namespace dmass::cli
