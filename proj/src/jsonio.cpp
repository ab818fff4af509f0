#include "koszul/jsonio.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace koszul {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json complex_to_json(const CochainComplex& C) {
    ordered_json j;
    j["p"] = C.p;
    std::vector<int> degs;
    for (auto& [d, n] : C.space.dims)
        if (n > 0) degs.push_back(d);
    j["degrees"] = degs;
    ordered_json dims = ordered_json::object();
    for (int d : degs) dims[std::to_string(d)] = C.space.dim(d);
    j["dims"] = dims;
    ordered_json diffs = ordered_json::object();
    for (auto& [d, m] : C.d) {
        if (m.rows() == 0 || m.cols() == 0) continue;
        std::vector<std::vector<int>> rows;
        for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
        diffs[std::to_string(d)] = rows;
    }
    j["differentials"] = diffs;
    if (C.space.has_weights()) {
        ordered_json w = ordered_json::object();
        for (int d : degs) w[std::to_string(d)] = C.space.weights.at(d);
        j["internal_degrees"] = w;
    }
    return j;
}

CochainComplex complex_from_json(const json& j) {
    CochainComplex C;
    C.p = j.at("p").get<int>();
    if (!is_prime(C.p)) throw std::invalid_argument("p must be prime");
    for (auto& [key, val] : j.at("dims").items()) C.space.dims[std::stoi(key)] = val.get<int>();
    if (j.contains("internal_degrees"))
        for (auto& [key, val] : j.at("internal_degrees").items())
            C.space.weights[std::stoi(key)] = val.get<std::vector<int>>();
    if (j.contains("differentials"))
        for (auto& [key, val] : j.at("differentials").items()) {
            int d = std::stoi(key);
            auto rows = val.get<std::vector<std::vector<int>>>();
            int rcount = C.space.dim(d + 1), ccount = C.space.dim(d);
            if (int(rows.size()) != rcount)
                throw std::invalid_argument("differential at " + key + " has wrong row count");
            FpMatrix m(rcount, ccount, C.p);
            for (int r = 0; r < rcount; ++r) {
                if (int(rows[r].size()) != ccount)
                    throw std::invalid_argument("differential at " + key + " has wrong column count");
                for (int c = 0; c < ccount; ++c) m.set(r, c, rows[r][c]);
            }
            C.d[d] = std::move(m);
        }
    auto chk = check_complex(C);
    if (!chk.pass) throw MalformedComplex(chk.message);
    return C;
}

namespace {

ordered_json table_to_json(const AInfinity& A, const MultiTable& t) {
    ordered_json entries = ordered_json::array();
    for (auto& [tuple, val] : t.entries) {
        ordered_json e;
        ordered_json in = ordered_json::array();
        for (int g : tuple) {
            auto [deg, idx] = A.idx.atom(g);
            in.push_back({deg, idx});
        }
        e["in"] = in;
        for (int k = 0; k < int(val.v.size()); ++k)
            if (val.v[k] != 0) {
                ordered_json term;
                term["out"] = {val.deg, k};
                term["c"] = val.v[k];
                e["terms"].push_back(term);
            }
        entries.push_back(e);
    }
    return entries;
}

void table_from_json(AInfinity& A, int arity, const json& entries) {
    MultiTable t;
    t.arity = arity;
    for (auto& e : entries) {
        std::vector<int> tuple;
        int degsum = 0;
        for (auto& pair : e.at("in")) {
            int deg = pair.at(0).get<int>(), idx = pair.at(1).get<int>();
            if (idx < 0 || idx >= A.space.dim(deg))
                throw std::invalid_argument("structure constant refers to a missing basis vector");
            tuple.push_back(A.idx.global(deg, idx));
            degsum += deg;
        }
        if (int(tuple.size()) != arity) throw std::invalid_argument("arity mismatch in maps");
        int outdeg = degsum + 2 - arity;
        Element val{outdeg, Vec(A.space.dim(outdeg), 0)};
        if (e.contains("terms"))
            for (auto& term : e.at("terms")) {
                int deg = term.at("out").at(0).get<int>(), idx = term.at("out").at(1).get<int>();
                if (deg != outdeg) throw std::invalid_argument("structure constant violates the degree rule");
                if (idx < 0 || idx >= A.space.dim(deg))
                    throw std::invalid_argument("structure constant output out of range");
                FpField f(A.p);
                val.v[idx] = f.reduce(term.at("c").get<long long>());
            }
        if (!val.is_zero()) t.entries[tuple] = std::move(val);
    }
    A.maps[arity] = std::move(t);
}

} // namespace

ordered_json ainfinity_to_json(const AInfinity& A) {
    ordered_json j;
    j["schema"] = kSchemaTag;
    j["kind"] = "algebra";
    j["p"] = A.p;
    ordered_json dims = ordered_json::object();
    for (auto& [d, n] : A.space.dims)
        if (n > 0) dims[std::to_string(d)] = n;
    j["dims"] = dims;
    j["nmax"] = A.n_max;
    if (A.unit) {
        int nz = 0, at = -1;
        for (int k = 0; k < int(A.unit->v.size()); ++k)
            if (A.unit->v[k] != 0) {
                ++nz;
                at = k;
            }
        if (nz == 1 && A.unit->v[at] == 1) j["unit"] = {A.unit->deg, at};
    }
    ordered_json maps = ordered_json::object();
    for (auto& [n, t] : A.maps) {
        if (t.entries.empty()) continue;
        maps["m" + std::to_string(n)] = table_to_json(A, t);
    }
    j["maps"] = maps;
    return j;
}

AInfinity ainfinity_from_json(const json& j) {
    AInfinity A;
    A.p = j.at("p").get<int>();
    if (!is_prime(A.p)) throw std::invalid_argument("p must be prime");
    for (auto& [key, val] : j.at("dims").items()) A.space.dims[std::stoi(key)] = val.get<int>();
    A.rebuild_index();
    A.n_max = j.value("nmax", 6);
    if (j.contains("unit")) {
        int deg = j.at("unit").at(0).get<int>(), idx = j.at("unit").at(1).get<int>();
        Element u{deg, Vec(A.space.dim(deg), 0)};
        u.v.at(idx) = 1;
        A.unit = std::move(u);
    }
    if (j.contains("maps"))
        for (auto& [key, val] : j.at("maps").items()) {
            if (key.size() < 2 || key[0] != 'm') throw std::invalid_argument("bad map key " + key);
            table_from_json(A, std::stoi(key.substr(1)), val);
        }
    return A;
}

ordered_json morphism_to_json(const AInfinityMorphism& fm, const AInfinity& target) {
    ordered_json j;
    j["schema"] = kSchemaTag;
    j["kind"] = "morphism";
    j["source"] = ainfinity_to_json(*fm.source);
    j["target"] = ainfinity_to_json(target);
    ordered_json maps = ordered_json::object();
    for (auto& [n, t] : fm.f) {
        if (t.entries.empty()) continue;
        ordered_json entries = ordered_json::array();
        for (auto& [tuple, val] : t.entries) {
            ordered_json e;
            ordered_json in = ordered_json::array();
            for (int g : tuple) {
                auto [deg, idx] = fm.source->idx.atom(g);
                in.push_back({deg, idx});
            }
            e["in"] = in;
            for (int k = 0; k < int(val.v.size()); ++k)
                if (val.v[k] != 0) {
                    ordered_json term;
                    term["out"] = {val.deg, k};
                    term["c"] = val.v[k];
                    e["terms"].push_back(term);
                }
            entries.push_back(e);
        }
        maps["f" + std::to_string(n)] = entries;
    }
    j["maps"] = maps;
    return j;
}

MorphismBundle morphism_from_json(const json& j) {
    MorphismBundle out;
    out.source = std::make_shared<AInfinity>(ainfinity_from_json(j.at("source")));
    out.target = std::make_shared<AInfinity>(ainfinity_from_json(j.at("target")));
    out.f.source = out.source.get();
    out.f.target = ops_from_table(*out.target);
    out.f.n_max = 1;
    if (j.contains("maps"))
        for (auto& [key, val] : j.at("maps").items()) {
            if (key.size() < 2 || key[0] != 'f') throw std::invalid_argument("bad map key " + key);
            int n = std::stoi(key.substr(1));
            out.f.n_max = std::max(out.f.n_max, n);
            MultiTable t;
            t.arity = n;
            for (auto& e : val) {
                std::vector<int> tuple;
                int degsum = 0;
                for (auto& pair : e.at("in")) {
                    int deg = pair.at(0).get<int>(), idx = pair.at(1).get<int>();
                    tuple.push_back(out.source->idx.global(deg, idx));
                    degsum += deg;
                }
                int outdeg = degsum + 1 - n;
                Element v{outdeg, Vec(out.target->space.dim(outdeg), 0)};
                if (e.contains("terms"))
                    for (auto& term : e.at("terms")) {
                        FpField f(out.target->p);
                        v.v.at(term.at("out").at(1).get<int>()) = f.reduce(term.at("c").get<long long>());
                    }
                if (!v.is_zero()) t.entries[tuple] = std::move(v);
            }
            out.f.f[n] = std::move(t);
        }
    return out;
}

ordered_json module_to_json(const AInfinityModule& M) {
    ordered_json j;
    j["schema"] = kSchemaTag;
    j["kind"] = "module";
    j["algebra"] = ainfinity_to_json(*M.algebra);
    j["p"] = M.p;
    ordered_json dims = ordered_json::object();
    for (auto& [d, n] : M.mspace.dims)
        if (n > 0) dims[std::to_string(d)] = n;
    j["dims"] = dims;
    ordered_json maps = ordered_json::object();
    for (auto& [n, t] : M.nu) {
        if (t.entries.empty()) continue;
        ordered_json entries = ordered_json::array();
        for (auto& [tuple, val] : t.entries) {
            ordered_json e;
            ordered_json in = ordered_json::array();
            for (int i = 0; i + 1 < int(tuple.size()); ++i) {
                auto [deg, idx] = M.algebra->idx.atom(tuple[i]);
                in.push_back({deg, idx});
            }
            auto [mdeg, midx] = M.midx.atom(tuple.back());
            e["in"] = in;
            e["m"] = {mdeg, midx};
            for (int k = 0; k < int(val.v.size()); ++k)
                if (val.v[k] != 0) {
                    ordered_json term;
                    term["out"] = {val.deg, k};
                    term["c"] = val.v[k];
                    e["terms"].push_back(term);
                }
            entries.push_back(e);
        }
        maps["nu" + std::to_string(n)] = entries;
    }
    j["maps"] = maps;
    return j;
}

ModuleBundle module_from_json(const json& j) {
    ModuleBundle out;
    out.algebra = std::make_shared<AInfinity>(ainfinity_from_json(j.at("algebra")));
    out.M = std::make_shared<AInfinityModule>();
    out.M->algebra = out.algebra.get();
    out.M->p = j.at("p").get<int>();
    for (auto& [key, val] : j.at("dims").items()) out.M->mspace.dims[std::stoi(key)] = val.get<int>();
    out.M->rebuild_index();
    out.M->n_max = 2;
    if (j.contains("maps"))
        for (auto& [key, val] : j.at("maps").items()) {
            if (key.size() < 3 || key.substr(0, 2) != "nu") throw std::invalid_argument("bad map key " + key);
            int n = std::stoi(key.substr(2));
            out.M->n_max = std::max(out.M->n_max, n);
            MultiTable t;
            t.arity = n;
            for (auto& e : val) {
                std::vector<int> tuple;
                int degsum = 0;
                for (auto& pair : e.at("in")) {
                    int deg = pair.at(0).get<int>(), idx = pair.at(1).get<int>();
                    tuple.push_back(out.algebra->idx.global(deg, idx));
                    degsum += deg;
                }
                int mdeg = e.at("m").at(0).get<int>(), midx = e.at("m").at(1).get<int>();
                tuple.push_back(out.M->midx.global(mdeg, midx));
                degsum += mdeg;
                int outdeg = degsum + 2 - n;
                Element v{outdeg, Vec(out.M->mspace.dim(outdeg), 0)};
                if (e.contains("terms"))
                    for (auto& term : e.at("terms")) {
                        FpField f(out.M->p);
                        v.v.at(term.at("out").at(1).get<int>()) = f.reduce(term.at("c").get<long long>());
                    }
                if (!v.is_zero()) t.entries[tuple] = std::move(v);
            }
            out.M->nu[n] = std::move(t);
        }
    return out;
}

PValuedGroupSpec group_spec_from_json(const json& j) {
    PValuedGroupSpec spec;
    spec.p = j.at("p").get<int>();
    spec.d = j.at("d").get<int>();
    if (j.contains("weights")) {
        for (auto& w : j.at("weights")) {
            if (w.is_number_integer()) {
                spec.weights.push_back(Rational(w.get<long long>()));
            } else {
                std::string s = w.get<std::string>();
                auto slash = s.find('/');
                if (slash == std::string::npos)
                    spec.weights.push_back(Rational(std::stoll(s)));
                else
                    spec.weights.push_back(Rational(std::stoll(s.substr(0, slash)),
                                                    std::stoll(s.substr(slash + 1))));
            }
        }
    }
    spec.validate();
    return spec;
}

void write_text_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << text;
    }
    fs::rename(tmp, target);
}

} // namespace koszul
