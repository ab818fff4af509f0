#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "koszul/ext.hpp"
#include "koszul/homcx.hpp"
#include "koszul/jsonio.hpp"
#include "koszul/transfer.hpp"

using namespace koszul;
using nlohmann::ordered_json;

namespace {

int thread_cap() {
    const char* env = std::getenv("KOSZUL_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n < 1 ? 1 : n;
}

void emit(const ordered_json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (!out_path.empty()) write_text_atomic(out_path, text);
    std::cout << text;
}

ordered_json json_error(const std::string& command, const std::string& what) {
    ordered_json j;
    j["schema"] = kSchemaTag;
    j["command"] = command;
    j["error"] = what;
    return j;
}

void require_odd_prime(int p) {
    if (!is_prime(p) || p == 2) throw CLI::ValidationError("--p", "p must be an odd prime");
}

ordered_json check_to_json(const std::string& name, const CheckReport& rep) {
    ordered_json j;
    j["name"] = name;
    j["pass"] = rep.pass;
    j["checked"] = rep.checked;
    j["skipped_uncertified"] = rep.skipped_uncertified;
    j["violation_count"] = rep.violation_count;
    ordered_json viols = ordered_json::array();
    for (auto& v : rep.violations) {
        ordered_json e;
        e["arity"] = v.arity;
        e["tuple"] = v.tuple;
        e["note"] = v.note;
        ordered_json res = ordered_json::array();
        for (int k = 0; k < int(v.residual.v.size()); ++k)
            if (v.residual.v[k] != 0) res.push_back({v.residual.deg, k, v.residual.v[k]});
        e["residual"] = res;
        viols.push_back(e);
    }
    j["violations"] = viols;
    return j;
}

struct ModelArgs {
    std::string algebra = "sv";
    int d = 1, n = 2, p = 3, nmax = 4, trunc = -1;
    std::string out;
    long long seed = 0;
};

int run_minimal_model(const ModelArgs& a) {
    ordered_json cfg;
    cfg["algebra"] = a.algebra;
    cfg["p"] = a.p;
    cfg["nmax"] = a.nmax;
    cfg["seed"] = a.seed;
    cfg["threads"] = thread_cap();

    Resolution R;
    TransferOptions opts;
    opts.n_max = a.nmax;
    opts.deg_lo = 0;
    opts.weight_hi = 0;
    int certified_deg;
    if (a.algebra == "sv") {
        int D = a.trunc > 0 ? a.trunc : a.d + 2;
        cfg["d"] = a.d;
        cfg["trunc"] = D;
        R = koszul_resolution(a.d, a.p, D);
        certified_deg = a.d;
    } else if (a.algebra == "xn") {
        int L = a.trunc > 0 ? a.trunc : std::min(a.nmax + 3, 8);
        cfg["n"] = a.n;
        cfg["trunc"] = L;
        R = minimal_power_resolution(a.n, a.p, L);
        certified_deg = R.certified_ext_degree;
        opts.deg_hi = certified_deg;
    } else {
        throw CLI::ValidationError("--algebra", "expected sv or xn");
    }

    EndResolutionDGA E(R, CompositionOrder::direct);
    auto S = cohomology_splitting(E.complex(), unit_seeded_options(E, thread_cap()));
    auto tr = transfer_minimal_model(E, S, opts);

    auto stasheff = check_stasheff(*tr.H, std::min(a.nmax + 1, 6));
    auto morphism = check_morphism(tr.f, std::min(a.nmax, 5));
    auto unital = check_strict_unitality(*tr.H);

    ordered_json j = ainfinity_to_json(*tr.H);
    j["command"] = "minimal-model";
    j["config"] = cfg;
    j["certified_through_degree"] = certified_deg;
    ordered_json checks = ordered_json::array();
    checks.push_back(check_to_json("stasheff", stasheff));
    checks.push_back(check_to_json("morphism", morphism));
    checks.push_back(check_to_json("strict_unitality", unital));
    j["checks"] = checks;
    long uncert = 0;
    for (auto& [arity, t] : tr.H->maps) uncert += long(t.uncertified.size());
    j["uncertified_tuples"] = uncert;
    emit(j, a.out);
    return (stasheff.pass && morphism.pass && unital.pass) ? 0 : 1;
}

struct BettiArgs {
    int d = 1, p = 3, imax = -1, trunc = -1;
    std::string resolution = "both";
    std::string out, csv;
    long long seed = 0;
};

int run_betti(const BettiArgs& a) {
    int imax = a.imax > 0 ? a.imax : a.d + 1;
    std::vector<std::string> routes;
    if (a.resolution == "both") routes = {"bar", "koszul"};
    else routes = {a.resolution};

    ordered_json j;
    j["schema"] = kSchemaTag;
    j["command"] = "betti";
    ordered_json cfg;
    cfg["d"] = a.d;
    cfg["p"] = a.p;
    cfg["imax"] = imax;
    cfg["resolution"] = a.resolution;
    cfg["seed"] = a.seed;
    j["config"] = cfg;

    bool all_match = true;
    std::vector<BettiResult> results;
    ordered_json tables = ordered_json::array();
    for (auto& route : routes) {
        BettiResult r = betti_numbers(a.d, a.p, imax, route, a.trunc);
        all_match &= r.matches_binomial;
        ordered_json t;
        t["route"] = r.route;
        t["truncation"] = r.truncation;
        t["certified_through"] = r.certified_through;
        t["dims"] = r.dims;
        t["matches_binomial"] = r.matches_binomial;
        tables.push_back(t);
        results.push_back(std::move(r));
    }
    j["tables"] = tables;
    if (results.size() == 2) {
        bool agree = true;
        int n = std::min(results[0].certified_through, results[1].certified_through);
        for (int i = 0; i <= n; ++i) agree &= results[0].dims[i] == results[1].dims[i];
        j["route_agreement"] = agree;
        all_match &= agree;
    }
    emit(j, a.out);
    if (!a.csv.empty()) {
        std::string csv = "route,i,dim,certified\n";
        for (auto& r : results)
            for (int i = 0; i < int(r.dims.size()); ++i)
                csv += r.route + "," + std::to_string(i) + "," + std::to_string(r.dims[i]) + "," +
                       (i <= r.certified_through ? "yes" : "no") + "\n";
        write_text_atomic(a.csv, csv);
    }
    return all_match ? 0 : 1;
}

struct ExtArgs {
    std::string algebra = "sv";
    int d = 2, n = 2, p = 3, imax = -1, trunc = -1;
    std::string out;
    long long seed = 0;
};

int run_ext(const ExtArgs& a) {
    ordered_json j;
    j["schema"] = kSchemaTag;
    j["command"] = "ext";
    ordered_json cfg;
    cfg["algebra"] = a.algebra;
    cfg["p"] = a.p;
    cfg["seed"] = a.seed;

    Resolution R;
    int imax;
    if (a.algebra == "sv") {
        imax = a.imax > 0 ? a.imax : a.d;
        int D = a.trunc > 0 ? a.trunc : std::max(a.d, imax) + 2;
        cfg["d"] = a.d;
        cfg["trunc"] = D;
        R = koszul_resolution(a.d, a.p, D);
    } else if (a.algebra == "xn") {
        imax = a.imax > 0 ? a.imax : 3;
        int L = a.trunc > 0 ? a.trunc : imax + 2;
        cfg["n"] = a.n;
        cfg["trunc"] = L;
        R = minimal_power_resolution(a.n, a.p, L);
    } else {
        throw CLI::ValidationError("--algebra", "expected sv or xn");
    }
    cfg["imax"] = imax;
    j["config"] = cfg;

    auto ext = ext_algebra(R, imax, 2, thread_cap());
    ordered_json dims = ordered_json::object();
    for (int i = 0; i <= imax; ++i) dims[std::to_string(i)] = ext.dim(i);
    j["dims"] = dims;

    /* structure constants of the Yoneda product */
    ordered_json products = ordered_json::array();
    const AInfinity& H = *ext.H;
    if (H.maps.count(2))
        for (auto& [tuple, val] : H.maps.at(2).entries) {
            auto [da, ia] = H.idx.atom(tuple[0]);
            auto [db, ib] = H.idx.atom(tuple[1]);
            if (da + db > imax) continue;
            ordered_json e;
            e["in"] = {ordered_json{da, ia}, ordered_json{db, ib}};
            ordered_json terms = ordered_json::array();
            for (int k = 0; k < int(val.v.size()); ++k)
                if (val.v[k] != 0) terms.push_back({val.deg, k, val.v[k]});
            e["terms"] = terms;
            products.push_back(e);
        }
    j["products"] = products;

    bool ring_ok = true;
    if (a.algebra == "sv") {
        FpField f(a.p);
        /* anticommutativity and vanishing squares in degree 1 */
        for (int i = 0; i < ext.dim(1) && ring_ok; ++i)
            for (int k = 0; k < ext.dim(1); ++k) {
                auto ik = ext.product(1, i, 1, k);
                auto ki = ext.product(1, k, 1, i);
                if (!ik || !ki) {
                    ring_ok = false;
                    break;
                }
                for (std::size_t t = 0; t < ik->v.size(); ++t)
                    if (ik->v[t] != f.neg(ki->v[t])) ring_ok = false;
                if (i == k && !ik->is_zero()) ring_ok = false;
            }
        /* degree-one classes generate */
        std::vector<std::vector<Vec>> layer(imax + 1);
        for (int k = 0; k < ext.dim(1); ++k) {
            Vec v(ext.dim(1), 0);
            v[k] = 1;
            layer[1].push_back(std::move(v));
        }
        for (int deg = 2; deg <= imax; ++deg) {
            for (auto& x : layer[deg - 1])
                for (int k = 0; k < ext.dim(1); ++k) {
                    Vec prod(ext.dim(deg), 0);
                    for (int c = 0; c < int(x.size()); ++c) {
                        if (x[c] == 0) continue;
                        auto val = ext.product(deg - 1, c, 1, k);
                        if (!val) continue;
                        for (int t = 0; t < int(prod.size()); ++t)
                            prod[t] = f.add(prod[t], f.mul(x[c], val->v[t]));
                    }
                    layer[deg].push_back(std::move(prod));
                }
            int r = layer[deg].empty() ? 0 : rank(FpMatrix::from_rows(layer[deg], ext.dim(deg), a.p));
            if (r != ext.dim(deg)) ring_ok = false;
        }
        j["exterior_relations"] = ring_ok;
    }
    emit(j, a.out);
    return ring_ok ? 0 : 1;
}

struct GrArgs {
    int d = 1, p = 3, N = 4;
    std::vector<std::string> weights;
    std::string out;
    long long seed = 0;
};

int run_gr(const GrArgs& a) {
    PValuedGroupSpec spec;
    spec.p = a.p;
    spec.d = a.d;
    for (auto& w : a.weights) {
        auto slash = w.find('/');
        if (slash == std::string::npos) spec.weights.push_back(Rational(std::stoll(w)));
        else
            spec.weights.push_back(
                Rational(std::stoll(w.substr(0, slash)), std::stoll(w.substr(slash + 1))));
    }
    spec.validate();
    FilteredIwasawaTruncation T(spec, a.N);
    auto gr = gr_algebra(T);

    ordered_json j;
    j["schema"] = kSchemaTag;
    j["command"] = "gr";
    ordered_json cfg;
    cfg["d"] = a.d;
    cfg["p"] = a.p;
    cfg["N"] = a.N;
    cfg["seed"] = a.seed;
    if (!a.weights.empty()) cfg["weights"] = a.weights;
    j["config"] = cfg;
    ordered_json dims = ordered_json::object();
    for (auto& [v, n] : gr.dims) dims[v] = n;
    j["gr_dims"] = dims;
    j["iso_to_symmetric_algebra"] = gr.iso_to_symmetric;
    j["certified_product_degree"] = a.N - 1;
    if (!gr.iso_to_symmetric) j["failure"] = gr.failure;
    emit(j, a.out);
    return gr.iso_to_symmetric ? 0 : 1;
}

struct CheckArgs {
    std::string input;
    int nmax = 5;
    std::string out;
};

int run_check(const CheckArgs& a) {
    std::ifstream in(a.input);
    if (!in) throw CLI::ValidationError("--input", "cannot open " + a.input);
    nlohmann::json doc = nlohmann::json::parse(in);
    std::string kind = doc.value("kind", "algebra");

    ordered_json j;
    j["schema"] = kSchemaTag;
    j["command"] = "check";
    j["input"] = a.input;
    j["kind"] = kind;
    ordered_json checks = ordered_json::array();
    bool pass = true;

    if (kind == "algebra") {
        AInfinity A = ainfinity_from_json(doc);
        auto rep = check_stasheff(A, a.nmax);
        checks.push_back(check_to_json("stasheff", rep));
        pass &= rep.pass;
        if (A.unit) {
            auto ru = check_strict_unitality(A);
            checks.push_back(check_to_json("strict_unitality", ru));
            pass &= ru.pass;
        }
    } else if (kind == "morphism") {
        auto bundle = morphism_from_json(doc);
        auto rep = check_morphism(bundle.f, a.nmax);
        checks.push_back(check_to_json("morphism", rep));
        pass &= rep.pass;
        auto rs = check_stasheff(*bundle.source, a.nmax);
        checks.push_back(check_to_json("source_stasheff", rs));
        pass &= rs.pass;
    } else if (kind == "module") {
        auto bundle = module_from_json(doc);
        auto rep = check_module_stasheff(*bundle.M, a.nmax);
        checks.push_back(check_to_json("module_stasheff", rep));
        pass &= rep.pass;
        if (bundle.algebra->unit) {
            auto ru = check_strict_unitality(*bundle.M);
            checks.push_back(check_to_json("strict_unitality", ru));
            pass &= ru.pass;
        }
    } else {
        throw CLI::ValidationError("--input", "unknown kind: " + kind);
    }
    j["checks"] = checks;
    j["pass"] = pass;
    emit(j, a.out);
    return pass ? 0 : 1;
}

struct DualArgs {
    std::string input;
    std::string out;
};

int run_dualize(const DualArgs& a) {
    std::ifstream in(a.input);
    if (!in) throw CLI::ValidationError("--input", "cannot open " + a.input);
    CochainComplex I = complex_from_json(nlohmann::json::parse(in));
    CochainComplex P = dual_complex(I);
    std::string why;
    bool ok = verify_dual_end_isomorphism(I, &why);

    ordered_json j;
    j["schema"] = kSchemaTag;
    j["command"] = "dualize";
    j["input"] = a.input;
    j["dual"] = complex_to_json(P);
    j["end_comparison_isomorphism"] = ok;
    if (!ok) j["failure"] = why;
    emit(j, a.out);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic minimal A-infinity structures on Ext algebras over F_p"};
    app.require_subcommand(1);

    ModelArgs ma;
    auto* mm = app.add_subcommand("minimal-model",
                                  "transfer the minimal model of the End DGA of a resolution");
    mm->add_option("--algebra", ma.algebra, "sv (symmetric algebra) or xn (F_p[x]/(x^n))");
    mm->add_option("--d", ma.d, "number of variables for sv");
    mm->add_option("--n", ma.n, "exponent for xn");
    mm->add_option("--p", ma.p, "odd prime modulus")->required();
    mm->add_option("--nmax", ma.nmax, "highest transferred arity");
    mm->add_option("--trunc", ma.trunc, "degree cap (sv) or resolution length (xn)");
    mm->add_option("--out", ma.out, "output JSON path");
    mm->add_option("--seed", ma.seed, "sampler seed recorded in the artifact");

    BettiArgs ba;
    auto* bt = app.add_subcommand("betti", "certified dim Ext^i tables");
    bt->add_option("--d", ba.d, "rank of the group")->required();
    bt->add_option("--p", ba.p, "odd prime modulus")->required();
    bt->add_option("--imax", ba.imax, "largest cohomological degree");
    bt->add_option("--resolution", ba.resolution, "bar | koszul | both");
    bt->add_option("--trunc", ba.trunc, "truncation override");
    bt->add_option("--out", ba.out, "output JSON path");
    bt->add_option("--csv", ba.csv, "also write a CSV projection");
    bt->add_option("--seed", ba.seed, "sampler seed recorded in the artifact");

    ExtArgs ea;
    auto* ex = app.add_subcommand("ext", "Ext algebra with Yoneda products");
    ex->add_option("--algebra", ea.algebra, "sv or xn");
    ex->add_option("--d", ea.d, "number of variables for sv");
    ex->add_option("--n", ea.n, "exponent for xn");
    ex->add_option("--p", ea.p, "odd prime modulus")->required();
    ex->add_option("--imax", ea.imax, "largest cohomological degree");
    ex->add_option("--trunc", ea.trunc, "truncation override");
    ex->add_option("--out", ea.out, "output JSON path");
    ex->add_option("--seed", ea.seed, "sampler seed recorded in the artifact");

    GrArgs ga;
    auto* gr = app.add_subcommand("gr", "associated graded of the Iwasawa filtration");
    gr->add_option("--d", ga.d, "rank of the group")->required();
    gr->add_option("--p", ga.p, "odd prime modulus")->required();
    gr->add_option("--N", ga.N, "truncation exponent");
    gr->add_option("--weights", ga.weights, "basis valuations, e.g. 1 1 or 3/2")->expected(-1);
    gr->add_option("--out", ga.out, "output JSON path");
    gr->add_option("--seed", ga.seed, "sampler seed recorded in the artifact");

    CheckArgs ca;
    auto* ck = app.add_subcommand("check", "run the identity checkers on a JSON structure");
    ck->add_option("--input", ca.input, "structure/morphism/module JSON")->required();
    ck->add_option("--nmax", ca.nmax, "highest arity to check");
    ck->add_option("--out", ca.out, "output JSON path");

    DualArgs da;
    auto* du = app.add_subcommand("dualize", "dual complex and the End comparison");
    du->add_option("--input", da.input, "complex JSON")->required();
    du->add_option("--out", da.out, "output JSON path");

    std::string cmd = "";
    try {
        app.parse(argc, argv);
        if (mm->parsed()) {
            cmd = "minimal-model";
            require_odd_prime(ma.p);
            return run_minimal_model(ma);
        }
        if (bt->parsed()) {
            cmd = "betti";
            require_odd_prime(ba.p);
            if (ba.d < 1) throw CLI::ValidationError("--d", "d must be at least 1");
            return run_betti(ba);
        }
        if (ex->parsed()) {
            cmd = "ext";
            require_odd_prime(ea.p);
            return run_ext(ea);
        }
        if (gr->parsed()) {
            cmd = "gr";
            require_odd_prime(ga.p);
            return run_gr(ga);
        }
        if (ck->parsed()) {
            cmd = "check";
            return run_check(ca);
        }
        if (du->parsed()) {
            cmd = "dualize";
            return run_dualize(da);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; /* usage errors */
    } catch (const nlohmann::json::exception& e) {
        emit(json_error(cmd, std::string("parse error: ") + e.what()), "");
        return 2;
    } catch (const MalformedComplex& e) {
        emit(json_error(cmd, e.what()), "");
        return 2;
    } catch (const UncertifiedDegree& e) {
        emit(json_error(cmd, e.what()), "");
        return 1;
    } catch (const std::invalid_argument& e) {
        emit(json_error(cmd, e.what()), "");
        return 2;
    } catch (const std::exception& e) {
        emit(json_error(cmd, e.what()), "");
        return 1;
    }
    return 2;
}
