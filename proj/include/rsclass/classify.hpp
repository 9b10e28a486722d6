#ifndef RSCLASS_CLASSIFY_HPP_
#define RSCLASS_CLASSIFY_HPP_

#include <algorithm>
#include <cstdio>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsclass/descriptor.hpp"
#include "rsclass/jacobian.hpp"
#include "rsclass/subcovers.hpp"

namespace rsclass {

struct ClassCount {
    std::string group;
    std::string signature;
    long long skes = 0;
    int topological = 0;
    int isomorphism = 0;  // -1 when not decided
};

// One topological class of an action of a group of order 4*lambda*p.
struct RealizedClass {
    std::string label;
    std::shared_ptr<const Group> group;
    Signature signature;
    Tuple ske;
    std::string key;
};

struct LambdaVerdict {
    int lambda = 0;
    int order = 0;
    std::vector<Signature> signatures;
    std::vector<ClassCount> realized;
    std::vector<RealizedClass> reps;
    std::string verdict;  // realized, arithmetically-excluded, catalogue-excluded, unsupported
    bool conditional = false;
    std::string note;
};

struct SurfaceRecord {
    std::string label;   // C_3, S_1, X_p, Y_p, Z_p, F1, F2
    std::string source;  // C, S, F1, F2, boundary
    int parameter = 0;
    std::shared_ptr<const Group> group;
    Signature signature;
    Tuple ske;
    std::shared_ptr<const Group> full_group;
    Signature full_signature;
    Tuple full_ske;
    std::string full_key;
    CurveModel curve;
    CurveModel full_curve;
    DecompositionReport jacobian;
    DecompositionReport full_jacobian;

    bool extends() const { return full_group->n > group->n; }
};

struct FamilyInfo {
    std::string name;
    std::string group;
    Signature signature;
    int classes = 0;
    std::vector<SurfaceRecord> members;  // one record per topological class
    std::vector<std::string> boundary;   // labels of special members with more automorphisms
    std::vector<std::string> boundary_keys;
};

struct Check {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct LocusReport {
    int p = 0;
    int genus = 0;
    std::vector<Signature> signatures;
    std::vector<ClassCount> counts;
    std::vector<FamilyInfo> families;
    std::vector<SurfaceRecord> surfaces;  // C and S records
    int quasiplatonic_not_in_families = 0;
    std::vector<LambdaVerdict> large_orders;
    std::vector<Check> checks;

    bool all_pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    const Check* check(const std::string& id) const
    {
        for (auto& c : checks)
            if (c.id == id) return &c;
        return nullptr;
    }
    nlohmann::json to_json() const;
    std::string to_text() const;
};

namespace detail {

inline std::string hex(std::uint64_t x)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

// Identity of a surface: full group, its signature and the topological class of the vector.
inline std::string surface_key(ExtensionEngine& E, const Group& G, const Signature& s, const Tuple& ske)
{
    const auto& T = E.topology(G, s);
    return hex(group_fingerprint(G)) + "|" + s.text() + "|" + std::to_string(T.orbits.class_id(*T.aut, ske));
}

inline Tuple transport(const Tuple& t, const Morphism& f)
{
    Tuple u;
    for (int x : t) u.push_back(f(x));
    return u;
}

// The catalogue group isomorphic to H, with an isomorphism H -> it.
inline std::pair<const Group*, Morphism> locate(const Catalogue& C, const Group& H)
{
    for (const auto& G : C.groups)
        if (auto f = find_isomorphism(H, G)) return {&G, *f};
    throw ConsistencyError("catalogue has no group isomorphic to " + H.tag);
}

inline std::vector<std::vector<int>> subgroups_of_order(const Group& G, int order)
{
    std::set<std::vector<int>> out;
    for (int x = 0; x < G.n; ++x)
        for (int y = x; y < G.n; ++y) {
            auto S = subgroup_generated(G, {x, y});
            if (static_cast<int>(S.size()) == order) out.insert(S);
        }
    return {out.begin(), out.end()};
}

inline std::string large_label(const Group& G, const Signature& s, int p)
{
    if (G.n == 8 * p && s == Signature{0, {2, 2 * p, 4 * p}}) return "X_p";
    if (G.n == 12 * p && s == Signature{0, {2, 6, 2 * p}}) return "Y_p";
    if (G.n == 12 * p && s == Signature{0, {3, 3, 2 * p}}) return "Z_p";
    return G.tag + " " + s.str();
}

inline std::vector<int> sorted_dims(const DecompositionReport& R)
{
    std::vector<int> d;
    for (auto& row : R.nonzero()) d.push_back(row.dim);
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace detail

// Every lambda in [lo, hi]: admissible signatures for order 4*lambda*p and
// genus 2(p-1), then a search for generating vectors over the catalogue.
inline std::vector<LambdaVerdict> verify_large_orders(int p, int lo, int hi, ExtensionEngine& E)
{
    if (!is_prime(p) || p < 5) throw UsageError("verify_large_orders: p must be a prime >= 5");
    if (lo < 2 || hi < lo) throw UsageError("verify_large_orders: lambda range must satisfy 2 <= A <= B");
    const int genus = 2 * (p - 1);
    std::vector<LambdaVerdict> out;
    for (int lambda = lo; lambda <= hi; ++lambda) {
        LambdaVerdict V;
        V.lambda = lambda;
        V.order = 4 * lambda * p;
        V.signatures = admissible_signatures(V.order, genus);
        if (V.signatures.empty()) {
            V.verdict = "arithmetically-excluded";
            out.push_back(V);
            continue;
        }
        if (lambda % p == 0) {
            V.verdict = "unsupported";
            V.conditional = true;
            V.note = "p divides lambda";
            out.push_back(V);
            continue;
        }
        const Catalogue& C = E.catalogue_for(V.order);
        V.conditional = !C.complete;
        V.note = C.note;
        for (const auto& G : C.groups)
            for (const auto& s : V.signatures) {
                if (s.h != 0 || s.r() > 4) {
                    V.conditional = true;
                    V.note += (V.note.empty() ? "" : "; ") + std::string("signature ") + s.str() + " not searched";
                    continue;
                }
                if (enumerate_skes(G, s, 1).empty()) continue;
                const auto& T = E.topology(G, s);
                ClassCount cc{G.tag, s.str(), static_cast<long long>(T.skes.size()),
                              static_cast<int>(T.orbits.classes.size()), -1};
                try {
                    cc.isomorphism = static_cast<int>(isomorphism_classes(G, s, T.orbits, *T.aut, p).size());
                } catch (const UnsupportedError&) {
                }
                V.realized.push_back(cc);
                for (const auto& c : T.orbits.classes)
                    V.reps.push_back({detail::large_label(G, s, p), T.group, s, c.representative,
                                      detail::surface_key(E, G, s, c.representative)});
            }
        V.verdict = V.realized.empty() ? "catalogue-excluded" : "realized";
        out.push_back(V);
    }
    return out;
}

inline SurfaceRecord make_record(ExtensionEngine& E, const Group& G, const Signature& s, const Tuple& ske,
                                 const std::string& source)
{
    const int p = E.prime();
    SurfaceRecord R;
    R.source = source;
    R.group = std::make_shared<Group>(G);
    R.signature = s;
    R.ske = ske;
    R.curve = p_gonal_exponents(G, s, ske, order_p_element(G, p));
    R.jacobian = group_algebra_decomposition(G, s, ske);
    auto F = E.full_automorphism_group(G, s, ske);
    R.full_group = F.group;
    R.full_signature = F.signature;
    R.full_ske = F.ske;
    R.full_key = detail::surface_key(E, *F.group, F.signature, F.ske);
    if (R.extends()) {
        R.full_curve = p_gonal_exponents(*F.group, F.signature, F.ske, order_p_element(*F.group, p));
        R.full_jacobian = group_algebra_decomposition(*F.group, F.signature, F.ske);
    } else {
        R.full_curve = R.curve;
        R.full_jacobian = R.jacobian;
    }
    R.parameter = R.curve.family_parameter;
    if (R.extends() && R.full_curve.family != "generic")
        R.label = R.full_curve.family;
    else if (R.curve.family == "C_j" || R.curve.family == "S_j")
        R.label = R.curve.family.substr(0, 2) + std::to_string(R.parameter);
    else
        R.label = R.curve.family;
    return R;
}


namespace detail {

// Subgroups H meeting <t> trivially whose quotient X/H is a cyclic p-gonal
// curve over X/<t>H of genus 0 with branch exponents {1, 1, p-2} up to a unit.
inline std::vector<std::vector<int>> xhat_quotients(const Group& G, const Signature& s, const Tuple& ske, int t, int p)
{
    std::set<std::vector<int>> subs;
    for (int x = 0; x < G.n; ++x)
        for (int y = x; y < G.n; ++y) subs.insert(subgroup_generated(G, {x, y}));
    std::vector<std::vector<int>> out;
    for (const auto& H : subs) {
        if (std::find(H.begin(), H.end(), t) != H.end()) continue;
        if (std::any_of(H.begin(), H.end(), [&](int h) { return h != 0 && element_order(G, h) % p == 0; })) continue;
        if (quotient_genus(G, s, ske, H).genus != (p - 1) / 2) continue;
        auto gens = H;
        gens.push_back(t);
        if (quotient_genus(G, s, ske, subgroup_generated(G, gens)).genus != 0) continue;
        auto e = cyclic_quotient_exponents(G, s, ske, H, t);
        bool match = false;
        for (int u = 1; u < p && !match; ++u)
            match = sorted(scaled(e, u, p)) == sorted({1, 1, p - 2});
        if (match) out.push_back(H);
    }
    return out;
}

inline CurveModel template_model(int p, std::vector<Factor> f)
{
    CurveModel M;
    M.p = p;
    for (auto& x : f) x.exponent = static_cast<int>(mod(x.exponent, p));
    M.factors = std::move(f);
    return M;
}

// Closed-form model expected for a labelled surface.
inline std::optional<CurveModel> expected_model(const std::string& family, int p, int k)
{
    if (family == "F1") return template_model(p, {{"x", 4}, {"x^2-1", p - 2}, {"x^2-t", p - 2}});
    if (family == "F2")
        return template_model(p, {{"x-1", 1}, {"x-t", k}, {"x-1/t", k}, {"x+1", p - 1}, {"x+t", p - k}, {"x+1/t", p - k}});
    if (family == "C_j") return template_model(p, {{"x", 2 * k + 2}, {"x^2-1", p - 2}, {"x^2+1", p - 2 * k}});
    if (family == "S_j") return template_model(p, {{"x", 4}, {"x^4-1", static_cast<int>(inv_mod(k, p))}});
    if (family == "X_p") return template_model(p, {{"x", 4}, {"x^4-1", p - 2}});
    if (family == "Y_p") return template_model(p, {{"x^3-1", 1}, {"x^3+1", p - 1}});
    if (family == "Z_p") return template_model(p, {{"x", 2}, {"x^2-1", 2 * k}, {"x^2+1", 2 * k * k}});
    return std::nullopt;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = ", ")
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

inline std::string tuple_names(const Group& G, const Tuple& t)
{
    std::vector<std::string> v;
    for (int x : t) v.push_back(G.names[x]);
    return "(" + join(v) + ")";
}

}  // namespace detail

// Expected outcome per lambda: one class for lambda = 2, the Y_p class (and
// Z_p when p = 1 mod 3) for lambda = 3, nothing beyond.
inline std::vector<Check> check_large_orders(int p, const std::vector<LambdaVerdict>& verdicts)
{
    std::vector<Check> out;
    auto add = [&](const std::string& id, bool ok, const std::string& detail) { out.push_back({id, ok, detail}); };
    const bool one_mod_3 = p % 3 == 1;
    for (const auto& V : verdicts) {
        std::vector<std::string> labels;
        for (auto& r : V.reps) labels.push_back(r.label);
        std::string detail = "lambda=" + std::to_string(V.lambda) + " " + V.verdict + (V.conditional ? " (conditional)" : "") +
                             (labels.empty() ? "" : ": " + detail::join(labels));
        if (V.lambda == 2) {
            bool ok = V.reps.size() == 1 && V.reps[0].label == "X_p" &&
                      are_isomorphic(*V.reps[0].group, make_group("Zp*D(4)", p));
            add("lambda-2", ok, detail);
        } else if (V.lambda == 3) {
            std::vector<std::string> want{"Y_p"};
            if (one_mod_3) want.push_back("Z_p");
            bool ok = labels == want;
            for (auto& r : V.reps) {
                if (r.label == "Y_p") ok = ok && are_isomorphic(*r.group, make_group("D(3)*D(p)", p));
                if (r.label == "Z_p") ok = ok && are_isomorphic(*r.group, make_group("Zp:3A4", p));
            }
            add("lambda-3", ok, detail);
        } else {
            add("lambda-" + std::to_string(V.lambda), V.reps.empty(), detail);
        }
    }

    return out;
}

inline LocusReport classify_locus(int p, ExtensionEngine& E, int lambda_max = 21)
{
    if (p < 5 || !is_prime(p)) throw UsageError("classify: p must be a prime >= 5");
    LocusReport L;
    L.p = p;
    L.genus = 2 * (p - 1);
    const int h = (p - 1) / 2;
    const bool one_mod_3 = p % 3 == 1;
    auto add = [&](const std::string& id, bool ok, const std::string& detail) { L.checks.push_back({id, ok, detail}); };
    const Signature s1{0, {2, 2, p, 2 * p}}, s2{0, {2 * p, 2 * p, 2 * p}}, s3{0, {p, 4 * p, 4 * p}};

    const Catalogue& C = E.catalogue_for(4 * p);
    Group G1n = make_group("Zp*Z2^2", p), Dn = dihedral(2 * p), Zn = make_group("Zp*Z4", p);
    auto [G1, toG1] = detail::locate(C, G1n);
    auto [D2p, toD] = detail::locate(C, Dn);
    auto [Z4p, toZ] = detail::locate(C, Zn);

    // which groups realize which signatures
    L.signatures = admissible_signatures(4 * p, L.genus);
    std::map<std::string, std::set<std::string>> realized_by;
    for (const auto& s : L.signatures)
        for (const auto& G : C.groups) {
            if (s.h != 0 || s.r() > 4) continue;
            if (enumerate_skes(G, s, 1).empty()) continue;
            const auto& T = E.topology(G, s);
            ClassCount cc{G.tag, s.str(), static_cast<long long>(T.skes.size()),
                          static_cast<int>(T.orbits.classes.size()), -1};
            try {
                cc.isomorphism = static_cast<int>(isomorphism_classes(G, s, T.orbits, *T.aut, p).size());
            } catch (const UnsupportedError&) {
            }
            L.counts.push_back(cc);
            realized_by[s.text()].insert(G.tag);
        }
    {
        std::map<std::string, std::set<std::string>> want{
            {s1.text(), {G1->tag, D2p->tag}}, {s2.text(), {G1->tag}}, {s3.text(), {Z4p->tag}}};
        std::vector<std::string> seen;
        for (auto& [k, v] : realized_by) seen.push_back("(0;" + k.substr(2) + ") by " + detail::join({v.begin(), v.end()}, " "));
        add("signatures", realized_by == want, detail::join(seen, "; "));
    }

    // one-dimensional families
    for (auto [name, G] : {std::pair<std::string, const Group*>{"F1", G1}, {"F2", D2p}}) {
        FamilyInfo F;
        F.name = name;
        F.group = G->tag;
        F.signature = s1;
        const auto& T = E.topology(*G, s1);
        F.classes = static_cast<int>(T.orbits.classes.size());
        for (const auto& c : T.orbits.classes) {
            auto R = make_record(E, *G, s1, c.representative, name);
            R.label = name;
            F.members.push_back(std::move(R));
        }
        L.families.push_back(std::move(F));
    }
    FamilyInfo& F1 = L.families[0];
    FamilyInfo& F2 = L.families[1];
    add("F1-classes", F1.classes == 1, std::to_string(F1.classes) + " class");
    add("F2-classes", F2.classes >= 1 && F2.classes <= h,
        std::to_string(F2.classes) + " classes, bound " + std::to_string(h));
    {
        bool generic = true;
        for (auto* F : {&F1, &F2})
            for (auto& R : F->members) generic = generic && !R.extends();
        add("families-generic", generic, "no family vector extends along a known inclusion");
    }

    // quasiplatonic surfaces from the two remaining signatures
    auto collect = [&](const Group& G, const Signature& s, const std::string& source) {
        const auto& T = E.topology(G, s);
        for (const auto& c : isomorphism_classes(G, s, T.orbits, *T.aut, p))
            L.surfaces.push_back(make_record(E, G, s, c.representative, source));
    };
    collect(*G1, s2, "C");
    collect(*Z4p, s3, "S");
    int nC = 0, nS = 0, nS_ext = 0;
    for (auto& R : L.surfaces) {
        if (R.source == "C") ++nC;
        if (R.source == "S") {
            ++nS;
            nS_ext += R.extends();
        }
    }
    const int want_c = one_mod_3 ? (p + 5) / 6 : (p + 1) / 6;
    add("s2-classes", nC == want_c, std::to_string(nC) + " isomorphism classes, expected " + std::to_string(want_c));
    add("s3-classes", nS == h, std::to_string(nS) + " isomorphism classes, expected " + std::to_string(h));
    add("s3-extends-once", nS_ext == 1, std::to_string(nS_ext) + " class(es) extend");

    auto record_of_key = [&](const std::string& key) -> const SurfaceRecord* {
        for (auto& R : L.surfaces)
            if (R.full_key == key) return &R;
        return nullptr;
    };
    auto key_of = [&](const Group& G, const Signature& s, const Tuple& t) {
        auto F = E.full_automorphism_group(G, s, t);
        return detail::surface_key(E, *F.group, F.signature, F.ske);
    };
    auto theta_c = [&](int j) {
        int t = G1n.find("a"), x = G1n.find("b"), y = G1n.find("c");
        return detail::transport({G1n.mul(t, x), G1n.mul(G1n.pow(t, j), y), G1n.mul(G1n.pow(t, -1 - j), G1n.mul(x, y))}, toG1);
    };
    auto theta_s = [&](int j) {
        int a = Zn.find("a"), b = Zn.find("b");
        return detail::transport({a, Zn.mul(Zn.pow(a, j), b), Zn.mul(Zn.pow(a, -j - 1), Zn.pow(b, 3))}, toZ);
    };
    {
        bool covered = true;
        std::vector<std::string> where;
        for (int j = 1; j <= p - 2; ++j) {
            auto* R = record_of_key(key_of(*G1, s2, theta_c(j)));
            covered = covered && R && R->source == "C";
            where.push_back("C_" + std::to_string(j) + "->" + (R ? R->label : "?"));
        }
        for (int j = 1; j <= p - 2; ++j) {
            auto* R = record_of_key(key_of(*Z4p, s3, theta_s(j)));
            covered = covered && R;
            where.push_back("S_" + std::to_string(j) + "->" + (R ? R->label : "?"));
        }
        add("explicit-vectors", covered, detail::join(where, " "));
    }
    {
        auto kc = key_of(*G1, s2, theta_c(1));
        auto ks = key_of(*Z4p, s3, theta_s(h));
        auto* R = record_of_key(kc);
        add("C1-equals-S", kc == ks && R && R->label == "X_p" && are_isomorphic(*R->full_group, make_group("Zp*D(4)", p)) &&
                               R->full_signature == Signature{0, {2, 2 * p, 4 * p}},
            std::string(kc == ks ? "same" : "different") + " surface, label " + (R ? R->label : "?"));
    }
    {
        bool ok = true;
        std::vector<std::string> notes;
        for (int j = 1; j <= p - 2; ++j) {
            if (mod(1LL * j * j + j + 1, p) != 0) continue;
            auto* R = record_of_key(key_of(*G1, s2, theta_c(j)));
            bool hit = R && R->label == "Z_p" && R->full_signature == Signature{0, {3, 3, 2 * p}} &&
                       are_isomorphic(*R->full_group, make_group("Zp:3A4", p));
            ok = ok && hit;
            notes.push_back("C_" + std::to_string(j) + (hit ? " -> Zp:3A4 (3,3,2p)" : " -> not Zp:3A4"));
        }
        int zcount = 0;
        for (auto& R : L.surfaces) zcount += R.label == "Z_p";
        ok = ok && (one_mod_3 ? zcount == 1 : zcount == 0);
        if (notes.empty()) notes.push_back("no cube roots of unity mod p");
        add("cube-roots", ok, detail::join(notes, "; "));
    }

    // larger groups and the special members of the families
    L.large_orders = verify_large_orders(p, 2, lambda_max, E);
    for (auto* F : {&F1, &F2}) {
        const Group& named = F == &F1 ? G1n : Dn;
        for (const auto& V : L.large_orders)
            for (const auto& rep : V.reps) {
                bool inside = false;
                for (const auto& H : detail::subgroups_of_order(*rep.group, 4 * p)) {
                    if (quotient_genus(*rep.group, rep.signature, rep.ske, H).signature != s1) continue;
                    Group Hg = subgroup_as_group(*rep.group, H, {}, "H");
                    if (are_isomorphic(Hg, named)) {
                        inside = true;
                        break;
                    }
                }
                if (inside && std::find(F->boundary_keys.begin(), F->boundary_keys.end(), rep.key) == F->boundary_keys.end()) {
                    F->boundary.push_back(rep.label);
                    F->boundary_keys.push_back(rep.key);
                }
            }
    }
    add("F1-boundary", F1.boundary == std::vector<std::string>{"X_p"}, "{" + detail::join(F1.boundary) + "}");
    add("F2-boundary", F2.boundary == std::vector<std::string>{"Y_p"}, "{" + detail::join(F2.boundary) + "}");
    {
        bool disjoint = true;
        for (auto& k : F1.boundary_keys)
            disjoint = disjoint && std::find(F2.boundary_keys.begin(), F2.boundary_keys.end(), k) == F2.boundary_keys.end();
        add("families-disjoint", disjoint, "no special member lies in both families");
    }

    // quasiplatonic surfaces outside the families
    {
        std::set<std::string> keys;
        for (auto& R : L.surfaces) keys.insert(R.full_key);
        for (auto* F : {&F1, &F2})
            for (auto& k : F->boundary_keys) keys.erase(k);
        L.quasiplatonic_not_in_families = static_cast<int>(keys.size());
        const int want = one_mod_3 ? (2 * p - 5) / 3 : (2 * p - 7) / 3;
        add("quasiplatonic-count", L.quasiplatonic_not_in_families == want && nC + nS - 2 == want,
            std::to_string(L.quasiplatonic_not_in_families) + " surfaces, " + std::to_string(nC) + " + " +
                std::to_string(nS) + " - 2 = " + std::to_string(nC + nS - 2) + ", expected " + std::to_string(want));
    }

    for (auto& c : check_large_orders(p, L.large_orders)) L.checks.push_back(c);

    // Jacobians
    {
        auto& R = F1.members[0];
        add("jacobian-F1", detail::sorted_dims(R.jacobian) == std::vector<int>{h, h, p - 1},
            "dims " + detail::join([&] {
                std::vector<std::string> v;
                for (int d : detail::sorted_dims(R.jacobian)) v.push_back(std::to_string(d));
                return v;
            }()));
        bool ok = true;
        for (auto& M : F2.members) {
            auto nz = M.jacobian.nonzero();
            ok = ok && nz.size() == 2;
            for (auto& row : nz) ok = ok && row.n == 2 && row.dim == h;
        }
        add("jacobian-F2", ok, "two squared factors of dimension " + std::to_string(h) + " for every class");
        bool okc = true, oks = true;
        for (auto& S : L.surfaces) {
            auto d = detail::sorted_dims(S.jacobian);
            if (S.source == "C") okc = okc && d == std::vector<int>(4, h) && S.jacobian.nonzero().size() == 4;
            if (S.source == "S") oks = oks && d == std::vector<int>{h, h, p - 1};
        }
        add("jacobian-C", okc, "four factors of dimension " + std::to_string(h));
        add("jacobian-S", oks, "factors of dimension " + std::to_string(h) + ", " + std::to_string(h) + ", " + std::to_string(p - 1));
        const SurfaceRecord* X = nullptr;
        for (auto& S : L.surfaces)
            if (S.label == "X_p") X = &S;
        bool okx = X != nullptr;
        std::string dx = "missing";
        if (X) {
            std::vector<std::pair<int, int>> nd;
            for (auto& row : X->full_jacobian.nonzero()) nd.push_back({row.n, row.dim});
            std::sort(nd.begin(), nd.end());
            okx = nd == std::vector<std::pair<int, int>>{{1, h}, {1, h}, {2, h}};
            auto Q = detail::xhat_quotients(*X->full_group, X->full_signature, X->full_ske,
                                            order_p_element(*X->full_group, p), p);
            okx = okx && Q.size() == 4;
            dx = std::to_string(Q.size()) + " quotient curves of genus " + std::to_string(h) + " with exponents {1,1,p-2}";
        }
        add("jacobian-X", okx, dx);
    }

    // fixed points on the general member of the first family
    {
        auto& R = F1.members[0];
        const Group& G = *R.group;
        std::vector<int> fixed, genera;
        for (int g = 1; g < G.n; ++g) {
            if (element_order(G, g) != 2) continue;
            fixed.push_back(static_cast<int>(fixed_point_count(G, R.signature, R.ske, g).count));
            genera.push_back(quotient_genus(G, R.signature, R.ske, subgroup_generated(G, {g})).genus);
        }
        std::sort(fixed.begin(), fixed.end());
        std::sort(genera.begin(), genera.end());
        add("fixed-points-F1", fixed == std::vector<int>{2, 2 * p, 2 * p} && genera == std::vector<int>{h, h, p - 1},
            "involutions fix " + std::to_string(fixed.size() == 3 ? fixed[0] : -1) + ", " + std::to_string(2 * p) + ", " +
                std::to_string(2 * p) + " points");
    }

    // curve models against the closed forms
    {
        bool ok = true;
        std::vector<std::string> bad;
        auto test = [&](const CurveModel& M, const std::string& label) {
            auto want = detail::expected_model(M.family, p, M.family_parameter);
            bool hit = want && want->equation() == M.equation();
            if (!hit) bad.push_back(label + ": " + M.equation());
            ok = ok && hit;
        };
        for (auto* F : {&F1, &F2})
            for (auto& R : F->members) test(R.curve, R.label);
        for (auto& R : L.surfaces) {
            test(R.curve, R.label);
            if (R.extends()) test(R.full_curve, R.label);
        }
        add("curve-models", ok, bad.empty() ? "every model matches its closed form" : detail::join(bad, "; "));
    }
    return L;
}

inline std::vector<LambdaVerdict> verify_large_orders(int p, int lo, int hi, int jobs = 0)
{
    ExtensionEngine E(p, jobs);
    return verify_large_orders(p, lo, hi, E);
}

inline LocusReport classify_locus(int p, int jobs = 0)
{
    ExtensionEngine E(p, jobs);
    return classify_locus(p, E);
}

namespace detail {

inline nlohmann::json record_json(const SurfaceRecord& R)
{
    nlohmann::json j{{"label", R.label},
                     {"source", R.source},
                     {"parameter", R.parameter},
                     {"group", R.group->tag},
                     {"order", R.group->n},
                     {"signature", R.signature.str()},
                     {"ske", tuple_names(*R.group, R.ske)},
                     {"full_group", R.full_group->tag},
                     {"full_order", R.full_group->n},
                     {"full_signature", R.full_signature.str()},
                     {"full_ske", tuple_names(*R.full_group, R.full_ske)},
                     {"curve", R.full_curve.to_json()},
                     {"equation", R.full_curve.equation()},
                     {"jacobian", R.jacobian.to_json()}};
    if (R.extends()) {
        j["acting_equation"] = R.curve.equation();
        j["full_jacobian"] = R.full_jacobian.to_json();
    }
    return j;
}

inline nlohmann::json lambda_json(const LambdaVerdict& V)
{
    nlohmann::json j{{"lambda", V.lambda}, {"order", V.order}, {"verdict", V.verdict}, {"conditional", V.conditional}};
    j["signatures"] = nlohmann::json::array();
    for (auto& s : V.signatures) j["signatures"].push_back(s.str());
    j["realized"] = nlohmann::json::array();
    for (auto& c : V.realized)
        j["realized"].push_back({{"group", c.group}, {"signature", c.signature}, {"skes", c.skes},
                                 {"topological", c.topological}, {"isomorphism", c.isomorphism}});
    j["classes"] = nlohmann::json::array();
    for (auto& r : V.reps)
        j["classes"].push_back({{"label", r.label}, {"group", r.group->tag}, {"signature", r.signature.str()},
                                {"ske", tuple_names(*r.group, r.ske)}});
    if (!V.note.empty()) j["note"] = V.note;
    return j;
}

inline std::string lambda_text(const LambdaVerdict& V)
{
    std::ostringstream os;
    os << "lambda " << V.lambda << " (order " << V.order << "): " << V.verdict;
    if (V.conditional) os << " [conditional]";
    os << "\n";
    for (auto& c : V.realized)
        os << "  " << c.group << " " << c.signature << ": " << c.skes << " vectors, " << c.topological << " topological\n";
    for (auto& r : V.reps) os << "  " << r.label << " " << tuple_names(*r.group, r.ske) << "\n";
    if (!V.note.empty()) os << "  note: " << V.note << "\n";
    return os.str();
}

}  // namespace detail

inline nlohmann::json LocusReport::to_json() const
{
    nlohmann::json j{{"schema", "rsclass/1"}, {"command", "classify"}, {"p", p}, {"genus", genus}};
    j["signatures"] = nlohmann::json::array();
    for (auto& s : signatures) j["signatures"].push_back(s.str());
    j["counts"] = nlohmann::json::array();
    for (auto& c : counts)
        j["counts"].push_back({{"group", c.group}, {"signature", c.signature}, {"skes", c.skes},
                               {"topological", c.topological}, {"isomorphism", c.isomorphism}});
    j["families"] = nlohmann::json::array();
    for (auto& F : families) {
        nlohmann::json f{{"name", F.name}, {"group", F.group}, {"signature", F.signature.str()},
                         {"classes", F.classes}, {"boundary", F.boundary}};
        f["members"] = nlohmann::json::array();
        for (auto& R : F.members) f["members"].push_back(detail::record_json(R));
        j["families"].push_back(f);
    }
    j["surfaces"] = nlohmann::json::array();
    for (auto& R : surfaces) j["surfaces"].push_back(detail::record_json(R));
    j["quasiplatonic_not_in_families"] = quasiplatonic_not_in_families;
    j["large_orders"] = nlohmann::json::array();
    for (auto& V : large_orders) j["large_orders"].push_back(detail::lambda_json(V));
    j["checks"] = nlohmann::json::array();
    for (auto& c : checks) j["checks"].push_back({{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}});
    j["all_pass"] = all_pass();
    return j;
}

inline std::string LocusReport::to_text() const
{
    std::ostringstream os;
    os << "p = " << p << ", genus " << genus << "\n\nsignatures\n";
    for (auto& c : counts)
        os << "  " << c.signature << " " << c.group << ": " << c.skes << " vectors, " << c.topological
           << " topological, " << c.isomorphism << " isomorphism\n";
    os << "\nfamilies\n";
    for (auto& F : families) {
        os << "  " << F.name << " " << F.group << " " << F.signature.str() << ": " << F.classes << " class(es), boundary {"
           << detail::join(F.boundary) << "}\n";
        for (auto& R : F.members) os << "    " << R.curve.equation() << "\n";
    }
    os << "\nquasiplatonic\n";
    for (auto& R : surfaces)
        os << "  " << R.label << " [" << R.source << "] " << R.full_group->tag << " " << R.full_signature.str() << ": "
           << R.full_curve.equation() << "\n";
    os << "  not in families: " << quasiplatonic_not_in_families << "\n\nlarger groups\n";
    for (auto& V : large_orders) os << detail::lambda_text(V);
    os << "\n";
    for (auto& c : checks) os << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.detail << "\n";
    return os.str();
}

}  // namespace rsclass

#endif
