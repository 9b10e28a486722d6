// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rsclass/classify.hpp"

using namespace rsclass;

namespace {

const std::vector<int> kPrimes{5, 7, 11, 13};

struct Verdict {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

std::map<int, LocusReport>& reports()
{
    static std::map<int, LocusReport> r;
    return r;
}

const LocusReport& report(int p)
{
    auto& r = reports();
    auto it = r.find(p);
    if (it == r.end()) it = r.emplace(p, classify_locus(p)).first;
    return it->second;
}

void require_check(Verdict& v, int p, const std::string& id)
{
    const Check* c = report(p).check(id);
    if (!c) {
        v.require(false, "p=" + std::to_string(p) + " missing check " + id);
        return;
    }
    v.require(c->pass, "p=" + std::to_string(p) + " " + id + " (" + c->detail + ")");
}

// "y^p = f1^e1*f2^e2..." with bare x and exponent 1 omitted.
std::string equation(int p, const std::vector<std::pair<std::string, long long>>& factors)
{
    std::string s = "y^" + std::to_string(p) + " = ";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        long long e = mod(factors[i].second, p);
        s += (i ? "*" : "") + (factors[i].first == "x" ? std::string("x") : "(" + factors[i].first + ")");
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

int run_criterion(int number, const std::string& title, const std::function<void(Verdict&)>& body)
{
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << (v.pass ? "PASS" : "FAIL") << " " << number << " " << title;
    if (!v.notes.empty()) {
        os << ": ";
        for (std::size_t i = 0; i < v.notes.size(); ++i) os << (i ? "; " : "") << v.notes[i];
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, " [%.1fs]", secs);
    std::cout << os.str() << buf << std::endl;
    return v.pass ? 0 : 1;
}

}  // namespace

int main()
{
    int failures = 0;

    failures += run_criterion(1, "admissible signatures and realizability", [](Verdict& v) {
        for (int p : kPrimes) {
            std::set<std::vector<int>> got;
            for (auto& s : admissible_signatures(4 * p, 2 * (p - 1))) {
                v.require(s.h == 0, "genus zero quotient");
                got.insert(s.periods);
            }
            std::set<std::vector<int>> want{{2, 2, p, 2 * p}, {2 * p, 2 * p, 2 * p}, {p, 4 * p, 4 * p}};
            if (p == 5) want.insert({2, 2, 4, 20});
            v.require(got == want, "admissible set at p=" + std::to_string(p));
            require_check(v, p, "signatures");
        }
        v.note("(0;2,2,4,20) is arithmetically admissible only at p=5 and has no generating vector");
    });

    failures += run_criterion(2, "one-parameter families", [](Verdict& v) {
        std::string counts;
        for (int p : kPrimes) {
            require_check(v, p, "F1-classes");
            require_check(v, p, "F2-classes");
            counts += (counts.empty() ? "" : ", ") + std::string("p=") + std::to_string(p) + ": " +
                      std::to_string(report(p).families[1].classes);
        }
        v.note("dihedral family classes " + counts);
    });

    failures += run_criterion(3, "equal-period quasiplatonic classes", [](Verdict& v) {
        for (int p : kPrimes) {
            require_check(v, p, "s2-classes");
            require_check(v, p, "C1-equals-S");
            require_check(v, p, "cube-roots");
            require_check(v, p, "explicit-vectors");
        }
    });

    failures += run_criterion(4, "cyclic quasiplatonic classes", [](Verdict& v) {
        for (int p : kPrimes) {
            require_check(v, p, "s3-classes");
            require_check(v, p, "s3-extends-once");
        }
    });

    failures += run_criterion(5, "quasiplatonic surfaces outside the families", [](Verdict& v) {
        for (int p : kPrimes) {
            require_check(v, p, "quasiplatonic-count");
            require_check(v, p, "F1-boundary");
            require_check(v, p, "F2-boundary");
            require_check(v, p, "families-disjoint");
        }
    });

    failures += run_criterion(6, "groups of order 4*lambda*p, lambda in 2..21", [](Verdict& v) {
        for (int p : kPrimes) {
            const auto& L = report(p);
            for (const auto& V : L.large_orders) {
                require_check(v, p, "lambda-" + std::to_string(V.lambda));
                if (p <= 7) v.require(!V.conditional, "unconditional verdict at p=" + std::to_string(p));
                else if (V.conditional)
                    v.note("p=" + std::to_string(p) + " lambda=" + std::to_string(V.lambda) + " conditional on catalogue");
            }
        }
    });

    failures += run_criterion(7, "Jacobian decompositions", [](Verdict& v) {
        long long instances = 0;
        for (int p : kPrimes) {
            for (const auto& G : catalogue(4 * p, p).groups)
                for (const auto& s : admissible_signatures(4 * p, 2 * (p - 1)))
                    for (const auto& ske : enumerate_skes(G, s)) {
                        auto R = group_algebra_decomposition(G, s, ske, false);
                        if (R.total() != 2 * (p - 1)) v.require(false, "dimension sum for " + G.tag + " " + s.str());
                        ++instances;
                    }
            for (const char* id : {"jacobian-F1", "jacobian-F2", "jacobian-C", "jacobian-S", "jacobian-X"})
                require_check(v, p, id);
        }
        v.note(std::to_string(instances) + " vectors with dimension sum 2(p-1)");
    });

    failures += run_criterion(8, "fixed points and quotients", [](Verdict& v) {
        long long instances = 0;
        for (int p : kPrimes) {
            require_check(v, p, "fixed-points-F1");
            for (const auto& G : catalogue(4 * p, p).groups)
                for (const auto& s : admissible_signatures(4 * p, 2 * (p - 1)))
                    for (const auto& ske : enumerate_skes(G, s)) {
                        long long total = 0, want = 0;
                        for (int g = 1; g < G.n; ++g) total += fixed_point_count(G, s, ske, g).count;
                        for (int m : s.periods) want += static_cast<long long>(G.n / m) * (m - 1);
                        if (total != want) v.require(false, "ramification sum for " + G.tag + " " + s.str());
                        ++instances;
                    }
        }
        v.note(std::to_string(instances) + " vectors satisfy the ramification sum");
    });

    failures += run_criterion(9, "curve models", [](Verdict& v) {
        for (int p : {5, 7}) {
            const auto& L = report(p);
            require_check(v, p, "curve-models");
            std::map<std::string, std::string> want{
                {"F1", equation(p, {{"x", 4}, {"x^2-1", p - 2}, {"x^2-t", p - 2}})},
                {"X_p", equation(p, {{"x", 4}, {"x^4-1", p - 2}})},
                {"Y_p", equation(p, {{"x^3-1", 1}, {"x^3+1", p - 1}})},
            };
            v.require(L.families[0].members[0].curve.equation() == want["F1"], "F1 at p=" + std::to_string(p));
            for (const auto& M : L.families[1].members) {
                int k = M.curve.family_parameter;
                v.require(M.curve.equation() == equation(p, {{"x-1", 1}, {"x-t", k}, {"x-1/t", k}, {"x+1", p - 1},
                                                              {"x+t", p - k}, {"x+1/t", p - k}}),
                          "F2 at p=" + std::to_string(p));
            }
            std::set<std::string> seen;
            for (const auto& R : L.surfaces) {
                int j = R.curve.family_parameter;
                if (R.source == "C")
                    v.require(R.curve.equation() == equation(p, {{"x", 2 * j + 2}, {"x^2-1", p - 2}, {"x^2+1", p - 2 * j}}),
                              "C_" + std::to_string(j) + " at p=" + std::to_string(p));
                else
                    v.require(R.curve.equation() == equation(p, {{"x", 4}, {"x^4-1", inv_mod(j, p)}}),
                              "S_" + std::to_string(j) + " at p=" + std::to_string(p));
                if (R.label == "X_p") v.require(R.full_curve.equation() == want["X_p"], "X_p at p=" + std::to_string(p));
                if (R.label == "Z_p") {
                    bool any = false;
                    for (int r = 2; r < p; ++r)
                        if (mod(1LL * r * r + r + 1, p) == 0)
                            any = any || R.full_curve.equation() ==
                                             equation(p, {{"x", 2}, {"x^2-1", 2 * r}, {"x^2+1", 2LL * r * r}});
                    v.require(any, "Z_p at p=" + std::to_string(p));
                }
                seen.insert(R.label.substr(0, 2));
            }
            for (const auto& V : L.large_orders)
                for (const auto& rep : V.reps)
                    if (rep.label == "Y_p") {
                        auto M = p_gonal_exponents(*rep.group, rep.signature, rep.ske, order_p_element(*rep.group, p));
                        v.require(M.equation() == want["Y_p"], "Y_p at p=" + std::to_string(p));
                        seen.insert("Y_");
                    }
            for (const char* f : {"X_", "Y_", "S_"}) v.require(seen.count(f) > 0, std::string(f) + "p present at p=" + std::to_string(p));
        }
    });

    failures += run_criterion(10, "property suites", [](Verdict& v) {
        // exact orthogonality of character tables
        int tables = 0;
        for (int p : {5, 7})
            for (int lambda : {1, 2, 3})
                for (const auto& G : catalogue(4 * lambda * p, p).groups) {
                    const auto& T = cached_character_table(G);
                    const int r = T.size();
                    for (int i = 0; i < r; ++i)
                        for (int j = 0; j < r; ++j) {
                            Cyc acc = T.ring.zero();
                            for (int k = 0; k < r; ++k)
                                T.ring.add_to(acc, T.ring.mul(T.chars[i][k], T.chars[j][T.inverse_class[k]]),
                                              static_cast<long long>(T.classes[k].size()));
                            if (acc != T.ring.from_int(i == j ? G.n : 0)) v.require(false, "orthogonality in " + G.tag);
                        }
                    ++tables;
                }
        // braid moves keep product, generation and periods
        int orbit_runs = 0;
        for (int p : {5, 7})
            for (const auto& G : catalogue(4 * p, p).groups)
                for (const auto& s : admissible_signatures(4 * p, 2 * (p - 1))) {
                    auto skes = enumerate_skes(G, s);
                    if (skes.empty()) continue;
                    AutCanon A(automorphism_group(G));
                    hurwitz_orbits(G, s, skes, A, 0, true);
                    ++orbit_runs;
                }
        // determinism across worker counts
        for (int p : kPrimes) {
            std::string ref;
            for (int jobs : {1, 2, 8}) {
                auto text = classify_locus(p, jobs).to_json().dump();
                if (ref.empty()) ref = text;
                else v.require(text == ref, "byte-identical report at p=" + std::to_string(p) + " jobs=" + std::to_string(jobs));
            }
        }
        // coset cycles against fixed points and characters on cyclic subgroups
        long long quotients = 0;
        for (int p : {5, 7, 11})
            for (const auto& G : catalogue(4 * p, p).groups)
                for (const auto& s : admissible_signatures(4 * p, 2 * (p - 1))) {
                    auto skes = enumerate_skes(G, s);
                    for (std::size_t i = 0; i < skes.size(); i += p == 5 ? 1 : 17) {
                        const auto& T = cached_character_table(G);
                        std::vector<int> mu(T.size());
                        for (int c = 0; c < T.size(); ++c) mu[c] = chevalley_weil(T, c, G, s, skes[i]);
                        std::set<std::vector<int>> cyclic;
                        for (int g = 1; g < G.n; ++g) cyclic.insert(subgroup_generated(G, {g}));
                        for (const auto& H : cyclic) {
                            int a = quotient_genus(G, s, skes[i], H).genus;
                            int b = quotient_genus_from_characters(T, mu, H);
                            if (a != b) v.require(false, "quotient genus of " + G.tag);
                            ++quotients;
                        }
                    }
                }
        v.note(std::to_string(tables) + " tables, " + std::to_string(orbit_runs) + " verified orbit runs, " +
               std::to_string(quotients) + " quotient genera, reports identical for 1/2/8 threads");
    });

    return failures == 0 ? 0 : 1;
}
