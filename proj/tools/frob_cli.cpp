// frob: command-line front end. JSON on stdout by default, sorted keys.
// Exit codes: 0 ok, 2 bad parameters, 3 a verification failed, 4 truncation ran out.

#include "frob/json_io.hpp"
#include "frob/numcheck.hpp"
#include "frob/tables.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/sha.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#ifndef FROB_VERSION
#define FROB_VERSION "0.0.0"
#endif

using json = nlohmann::json;
using namespace frob;

namespace {

enum Exit { kOk = 0, kParam = 2, kVerify = 3, kTrunc = 4 };

struct Outcome {
    json out;
    bool ok = true;
};

// ---------------------------------------------------------------------------
// parsing helpers

Int default_order(Int fallback) {
    if (const char* s = std::getenv("FROB_ORDER")) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used == std::string(s).size() && v > 0) return v;
        } catch (const std::exception&) {
        }
        throw precondition_error(std::string("FROB_ORDER is not a positive integer: ") + s);
    }
    return fallback;
}

Int order_or_env(Int flag, Int fallback) { return flag > 0 ? flag : default_order(fallback); }

std::vector<Int> split_ints(const std::string& s) {
    std::vector<Int> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long long x = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            v.push_back(x);
        } catch (const std::exception&) {
            throw precondition_error("not an integer list: " + s);
        }
    }
    return v;
}

// a,b,c,d or a,b,c,d,eps
MetaElement parse_meta(const std::string& s) {
    auto v = split_ints(s);
    if (v.size() != 4 && v.size() != 5) throw precondition_error("matrix must be a,b,c,d or a,b,c,d,eps: " + s);
    int eps = v.size() == 5 ? static_cast<int>(v[4]) : 1;
    return MetaElement(mat2(v[0], v[1], v[2], v[3]), eps);
}

// ---------------------------------------------------------------------------
// JSON forms

json rat(const Rational& r) { return r.get_str(); }

json mat_json(const Mat2& m) { return json::array({rat(m.a()), rat(m.b()), rat(m.c()), rat(m.d())}); }

json meta_json(const MetaElement& g) { return {{"matrix", mat_json(g.m)}, {"eps", g.eps}}; }

// sum of coefficient * e(exponent)
json cyclo_json(const CycloNumber& z) {
    auto terms = json::array();
    const auto& c = z.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j)
        if (c[j] != 0) terms.push_back({rat(make_rat(static_cast<Int>(j), z.conductor())), rat(c[j])});
    return terms;
}

json cmatrix_json(const CMatrix& m) {
    auto rows = json::array();
    for (std::size_t r = 0; r < m.size(); ++r) {
        auto row = json::array();
        for (std::size_t c = 0; c < m.size(); ++c) row.push_back(cyclo_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

json report_json(const CongruenceReport& r) {
    json j = {{"family", r.family}, {"k", r.k},           {"beta", rat(r.beta)},    {"p", r.p},
              {"alpha", r.alpha},   {"modulus", r.modulus}, {"step", r.step},       {"offset", r.offset},
              {"n_max", r.n_max},   {"checked", r.checked}, {"pass", r.pass},       {"note", r.note}};
    auto f = json::array();
    for (const auto& [n, v] : r.failures) f.push_back({n, v});
    j["failures"] = f;
    j["inferred"] = r.inferred ? json(*r.inferred) : json(nullptr);
    return j;
}

json appendix_json(const AppendixReport& r) {
    auto res = json::array();
    for (const auto& x : r.results) res.push_back({{"name", x.name}, {"holds", x.holds}, {"checked_below", rat(x.checked_below)}});
    return {{"order", r.order}, {"results", res}, {"failures", r.failures()}, {"pass", r.all_hold()}};
}

json mk_json(const MkResult& r) {
    json j = {{"k", r.k}, {"m_k", r.value}, {"mode", r.mode == MkMode::exact ? "exact" : "float"}, {"index", r.index}, {"terms", r.terms}};
    if (r.mode == MkMode::floating) j["raw"] = r.raw;
    return j;
}

// ---------------------------------------------------------------------------
// text output: one "path: value" line per leaf

void flatten(const json& j, const std::string& path, std::ostream& os) {
    auto scalar_array = [](const json& a) {
        return std::all_of(a.begin(), a.end(), [](const json& x) { return x.is_primitive(); });
    };
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
    } else if (j.is_array() && scalar_array(j)) {
        os << path << ":";
        if (j.empty()) os << " []";
        for (const auto& x : j) os << " " << (x.is_string() ? x.get<std::string>() : x.dump());
        os << "\n";
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
    } else {
        os << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

std::string sha256_hex(const std::string& s) {
    unsigned char h[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(s.data()), s.size(), h);
    std::ostringstream os;
    for (unsigned char c : h) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(c);
    return os.str();
}

// every option of the chosen subcommand chain, defaults included
void collect_params(const CLI::App* app, const std::string& prefix, json& out) {
    for (const CLI::Option* o : app->get_options()) {
        if (o == app->get_help_ptr() || o == app->get_version_ptr()) continue;
        std::string name = o->get_name();
        std::string key = prefix + name;
        if (o->count() > 0) {
            auto r = o->results();
            if (o->get_expected_max() == 0) out[key] = true;
            else out[key] = r.size() == 1 ? json(r.front()) : json(r);
        } else {
            out[key] = o->get_default_str();
        }
    }
    for (const CLI::App* sub : app->get_subcommands())
        if (sub->parsed()) collect_params(sub, prefix + sub->get_name() + " ", out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frob: generalized Frobenius partitions, exact checks"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json", manifest_path;
    app.add_option("--format", format, "json or text")->capture_default_str()->check(CLI::IsMember({"json", "text"}));
    app.add_option("--manifest", manifest_path, "write a run manifest to this file");
    app.set_version_flag("--version", FROB_VERSION);

    std::function<Outcome()> run;

    // cpsi
    auto* cpsi_cmd = app.add_subcommand("cpsi", "generating functions");
    cpsi_cmd->require_subcommand(1);
    {
        auto* ex = cpsi_cmd->add_subcommand("expand", "q-expansion of cpsi_{k,beta}");
        static Int k = 0, order = 0;
        static std::string beta;
        static bool closed = false;
        ex->add_option("--k", k)->required();
        ex->add_option("--beta", beta)->required();
        ex->add_option("--order", order, "truncation order (default FROB_ORDER or 50)");
        ex->add_flag("--closed", closed, "k = 3 eta-product form");
        ex->callback([&] {
            run = [&] {
                Rational b = parse_rational(beta);
                Int n = order_or_env(order, 50);
                FracQSeries f;
                if (closed) {
                    if (k != 3) throw precondition_error("--closed exists for k = 3");
                    f = cpsi3_closed(b, n);
                } else {
                    f = cpsi(k, b, n);
                }
                return Outcome{series_to_json(f)};
            };
        });
        auto* im = cpsi_cmd->add_subcommand("import", "read a series file and write it back");
        static std::string file;
        im->add_option("--file", file)->required()->check(CLI::ExistingFile);
        im->callback([&] {
            run = [&] {
                std::ifstream in(file);
                json j;
                try {
                    j = json::parse(in);
                } catch (const json::exception& e) {
                    throw precondition_error(std::string("bad series json: ") + e.what());
                }
                FracQSeries f = series_from_json(j);
                Outcome o{series_to_json(f)};
                o.ok = o.out == j;
                if (!o.ok) std::cerr << "round trip differs from the input\n";
                return o;
            };
        });
    }

    // rho
    {
        auto* c = app.add_subcommand("rho", "rho_k(gamma), rows indexed by beta");
        static Int k = 0;
        static std::string gamma;
        static bool closed = false;
        c->add_option("--k", k)->required();
        c->add_option("--gamma", gamma, "a,b,c,d[,eps]")->required();
        c->add_flag("--closed", closed, "closed (t_beta, p_beta) form");
        c->callback([&] {
            run = [&] {
                MetaElement g = parse_meta(gamma);
                if (closed && g.eps != 1) throw precondition_error("--closed takes the standard lift");
                CMatrix m = closed ? rho_k_closed(k, g.m) : rho_k_of(k, g);
                auto betas = json::array();
                for (const Rational& b : beta_index(k)) betas.push_back(rat(b));
                return Outcome{{{"k", k}, {"gamma", meta_json(g)}, {"betas", betas}, {"matrix", cmatrix_json(m)}}};
            };
        });
    }

    // classes
    {
        auto* c = app.add_subcommand("classes", "Gamma0(k) classes of the beta index set");
        static Int k = 0;
        c->add_option("--k", k)->required();
        c->callback([&] {
            run = [&] {
                auto cls = json::array();
                for (const auto& v : equivalence_classes(k)) {
                    auto a = json::array();
                    for (const Rational& b : v) a.push_back(rat(b));
                    cls.push_back(a);
                }
                Outcome o{{{"k", k}, {"classes", cls}}};
                if (class_table().count(k)) {
                    o.ok = classes_match_table(k);
                    o.out["matches_table"] = o.ok;
                }
                return o;
            };
        });
    }

    // weil
    auto* weil_cmd = app.add_subcommand("weil", "Weil representation of the rank one lattice");
    weil_cmd->require_subcommand(1);
    {
        auto* c = weil_cmd->add_subcommand("matrix", "entry (y, x) is the delta_y coefficient of rho(g) delta_x");
        static Int k = 0;
        static std::string gamma;
        c->add_option("--k", k)->required();
        c->add_option("--gamma", gamma, "a,b,c,d[,eps]")->required();
        c->callback([&] {
            run = [&] {
                MetaElement g = parse_meta(gamma);
                DiscModule D(k);
                auto pts = json::array();
                for (Int j = 0; j < D.order; ++j) pts.push_back(rat(D.value(j)));
                return Outcome{{{"k", k}, {"gamma", meta_json(g)}, {"points", pts}, {"matrix", cmatrix_json(weil_rho(k, g))}}};
            };
        });
    }

    // meta
    auto* meta_cmd = app.add_subcommand("meta", "metaplectic group");
    meta_cmd->require_subcommand(1);
    {
        static std::string g1, g2;
        auto* c = meta_cmd->add_subcommand("compose", "product g1 g2");
        c->add_option("--g1", g1, "a,b,c,d[,eps]")->required();
        c->add_option("--g2", g2, "a,b,c,d[,eps]")->required();
        c->callback([&] {
            run = [&] {
                MetaElement a = parse_meta(g1), b = parse_meta(g2);
                return Outcome{{{"g1", meta_json(a)}, {"g2", meta_json(b)}, {"product", meta_json(a * b)}}};
            };
        });
        static std::string gw;
        auto* w = meta_cmd->add_subcommand("word", "S-T word");
        w->add_option("--g", gw, "a,b,c,d[,eps]")->required();
        w->callback([&] {
            run = [&] {
                MetaElement g = parse_meta(gw);
                STWord word = st_word(g);
                auto letters = json::array();
                for (const auto& l : word.letters) letters.push_back({std::string(1, l.gen), l.power});
                Outcome o{{{"g", meta_json(g)}, {"word", word.str()}, {"letters", letters}, {"tail", word.tail}}};
                o.ok = eval_word(word) == g;
                return o;
            };
        });
        static std::string gc;
        auto* x = meta_cmd->add_subcommand("chi-eta", "eta multiplier");
        x->add_option("--g", gc, "a,b,c,d[,eps]")->required();
        x->callback([&] {
            run = [&] {
                MetaElement g = parse_meta(gc);
                return Outcome{{{"g", meta_json(g)}, {"chi_eta", cyclo_json(chi_eta(g))}}};
            };
        });
    }

    // gamma
    auto* gamma_cmd = app.add_subcommand("gamma", "matrix searches");
    gamma_cmd->require_subcommand(1);
    {
        auto* c = gamma_cmd->add_subcommand("find", "gamma carrying beta to beta2");
        static Int k = 0, p = 0;
        static std::string b1, b2;
        c->add_option("--k", k)->required();
        c->add_option("--p", p)->required();
        c->add_option("--beta", b1)->required();
        c->add_option("--beta2", b2)->required();
        c->callback([&] {
            run = [&] {
                GammaSearchSpec s = gamma_search_spec(k, p, parse_rational(b1), parse_rational(b2));
                Mat2 g = find_gamma(s);
                return Outcome{{{"k", k},
                                {"p", p},
                                {"beta", rat(s.beta)},
                                {"beta2", rat(s.beta2)},
                                {"r", s.r},
                                {"r_e", s.r_e},
                                {"gamma", mat_json(g)},
                                {"t_beta", rat(t_beta(k, s.beta, g))}}};
            };
        });
    }

    // uprime
    auto* up_cmd = app.add_subcommand("uprime", "U_p' operator");
    up_cmd->require_subcommand(1);
    {
        auto* c = up_cmd->add_subcommand("params", "r and r_e");
        static Int k = 0, p = 0;
        static std::string beta;
        c->add_option("--k", k)->required();
        c->add_option("--beta", beta)->required();
        c->add_option("--p", p)->required();
        c->callback([&] {
            run = [&] {
                Rational b = parse_rational(beta);
                UPrimeParams u = u_p_prime_params(k, b, p);
                return Outcome{{{"k", k}, {"beta", rat(b)}, {"p", p}, {"r", u.r}, {"r_e", u.r_e}}};
            };
        });
    }

    // congruence
    auto* cong_cmd = app.add_subcommand("congruence", "congruence scans");
    cong_cmd->require_subcommand(1);
    {
        auto* c = cong_cmd->add_subcommand("scan", "proved families");
        static std::string family;
        static Int alpha = 1, nmax = 100, order = 0;
        std::vector<std::string> ids;
        for (const auto& f : congruence_families()) ids.push_back(f.id);
        c->add_option("--family", family)->required()->check(CLI::IsMember(ids));
        c->add_option("--alpha", alpha)->required();
        c->add_option("--nmax", nmax, "n runs over 0..nmax")->capture_default_str();
        c->add_option("--order", order, "series cap; too small gives exit 4");
        c->callback([&] {
            run = [&] {
                CongruenceReport r = congruence_scan(family, alpha, nmax, order);
                return Outcome{report_json(r), r.pass};
            };
        });
        auto* cj = cong_cmd->add_subcommand("conjecture", "k = 4 and k = 6 patterns mod 7^alpha");
        static Int ck = 4, calpha = 1, cnmax = 20;
        static std::string cbeta;
        cj->add_option("--k", ck)->required();
        cj->add_option("--beta", cbeta)->required();
        cj->add_option("--alpha", calpha)->required();
        cj->add_option("--nmax", cnmax)->capture_default_str();
        cj->callback([&] {
            run = [&] {
                CongruenceReport r = conjecture_scan(ck, parse_rational(cbeta), calpha, cnmax);
                return Outcome{report_json(r), r.pass};
            };
        });
    }

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "series identities");
    ver_cmd->require_subcommand(1);
    {
        auto* c = ver_cmd->add_subcommand("appendix-a", "the twenty U5 relations");
        static Int order = 0;
        static bool printed = false;
        c->add_option("--order", order, "default FROB_ORDER or 30");
        c->add_flag("--as-printed", printed, "use the relations without the two corrections");
        c->callback([&] {
            run = [&] {
                Int n = order_or_env(order, 30);
                AppendixReport r;
                if (printed) {
                    if (n < 1) throw precondition_error("order must be positive");
                    BaseFunctions b = base_functions(appendix_base_order(n), false);
                    r = verify_relations(b, b.A, b.p0, b.p1, n, appendix_relations_as_printed());
                } else {
                    r = verify_appendix_a(n);
                }
                return Outcome{appendix_json(r), r.all_hold()};
            };
        });
        auto* pb = ver_cmd->add_subcommand("pbar", "p0 bar and p1 bar, two constructions");
        static Int porder = 0;
        pb->add_option("--order", porder, "default FROB_ORDER or 30");
        pb->callback([&] {
            run = [&] {
                PBar r = pbar(order_or_env(porder, 30));
                Outcome o{{{"p0", series_to_json(r.p0)}, {"p1", series_to_json(r.p1)}, {"integral", r.integral}, {"c3n1_vanish", r.c3n1_vanish}}};
                o.ok = r.integral && r.c3n1_vanish;
                return o;
            };
        });
    }

    // check
    auto* chk_cmd = app.add_subcommand("check", "numerical checks");
    chk_cmd->require_subcommand(1);
    {
        auto* c = chk_cmd->add_subcommand("laws", "transformation-law residuals");
        static std::string id;
        static double tol = 1e-8;
        static Int order = 0;
        auto ids = battery_ids();
        c->add_option("--id", id)->check(CLI::IsMember(ids));
        c->add_option("--tol", tol)->capture_default_str()->check(CLI::PositiveNumber);
        c->add_option("--order", order, "series truncation for laws that use series");
        c->callback([&] {
            run = [&] {
                EvalConfig cfg;
                cfg.tol = tol;
                cfg.order = order;
                std::vector<LawResult> res;
                if (id.empty()) res = run_battery(cfg);
                else res.push_back(law_residual(id, cfg));
                Outcome o;
                auto arr = json::array();
                for (const auto& r : res) {
                    arr.push_back({{"id", r.id}, {"residual", r.residual}, {"checks", r.checks}, {"tol", r.tol}, {"pass", r.pass}, {"note", r.note}});
                    o.ok = o.ok && r.pass;
                }
                o.out = {{"laws", arr}, {"pass", o.ok}};
                return o;
            };
        });
    }

    // mk
    {
        auto* c = app.add_subcommand("mk", "dimension m_k of the invariant space");
        static Int k = 0;
        static std::string mode = "auto";
        c->add_option("--k", k)->required();
        c->add_option("--mode", mode)->capture_default_str()->check(CLI::IsMember({"auto", "exact", "float"}));
        c->callback([&] {
            run = [&] {
                MkResult r = mode == "auto" ? m_k(k) : m_k(k, mode == "exact" ? MkMode::exact : MkMode::floating);
                Outcome o{mk_json(r)};
                if (auto ref = mk_reference(k)) {
                    o.ok = *ref == r.value;
                    o.out["matches_table"] = o.ok;
                }
                return o;
            };
        });
    }

    // tables
    {
        auto* c = app.add_subcommand("tables", "class table and m_k table");
        static std::string which;
        static Int kmax = 0;
        static std::string mode = "auto";
        c->add_option("--which", which)->required()->check(CLI::IsMember({"classes", "mk"}));
        c->add_option("--kmax", kmax, "default 14 for classes, 8 for mk");
        c->add_option("--mode", mode, "m_k mode")->capture_default_str()->check(CLI::IsMember({"auto", "exact", "float"}));
        c->callback([&] {
            run = [&] {
                Outcome o;
                auto rows = json::array();
                if (which == "classes") {
                    Int top = kmax > 0 ? kmax : 14;
                    for (Int k = 1; k <= top; ++k) {
                        json row = {{"k", k}, {"classes", class_labels(k)}, {"label", k % 2 ? "2beta" : "beta"}};
                        if (class_table().count(k)) {
                            bool m = classes_match_table(k);
                            row["matches_table"] = m;
                            o.ok = o.ok && m;
                        }
                        rows.push_back(row);
                    }
                } else {
                    Int top = kmax > 0 ? kmax : 8;
                    for (Int k = 1; k <= top; ++k) {
                        MkResult r = mode == "auto" ? m_k(k) : m_k(k, mode == "exact" ? MkMode::exact : MkMode::floating);
                        json row = mk_json(r);
                        if (auto ref = mk_reference(k)) {
                            row["matches_table"] = *ref == r.value;
                            o.ok = o.ok && *ref == r.value;
                        }
                        rows.push_back(row);
                    }
                }
                o.out = {{"which", which}, {"rows", rows}, {"pass", o.ok}};
                return o;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kParam;
    }

    auto t0 = std::chrono::steady_clock::now();
    Outcome res;
    int code = kOk;
    try {
        res = run();
        if (!res.ok) code = kVerify;
    } catch (const precondition_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kParam;
    } catch (const truncation_error& e) {
        std::cerr << "truncation: " << e.what() << "\n";
        return kTrunc;
    } catch (const verification_error& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kVerify;
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string text;
    if (format == "json") {
        text = res.out.dump(2) + "\n";
    } else {
        std::ostringstream os;
        flatten(res.out, "", os);
        text = os.str();
    }
    std::cout << text;

    if (!manifest_path.empty()) {
        json params;
        collect_params(&app, "", params);
        params["FROB_ORDER"] = std::getenv("FROB_ORDER") ? json(std::getenv("FROB_ORDER")) : json(nullptr);
        std::string command;
        for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
        json m = {{"command", command},         {"params", params},         {"version", FROB_VERSION},
                  {"wall_time_s", wall},        {"output_sha256", sha256_hex(text)}, {"exit_code", code}};
        std::ofstream out(manifest_path);
        if (!out) {
            std::cerr << "cannot write manifest " << manifest_path << "\n";
            return kParam;
        }
        out << m.dump(2) << "\n";
    }
    return code;
}
