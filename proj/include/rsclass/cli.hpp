#ifndef RSCLASS_CLI_HPP_
#define RSCLASS_CLI_HPP_

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsclass/classify.hpp"

namespace rsclass::cli {

inline const char* grammar()
{
    return "usage: rsclass <command> --prime P [options]\n"
           "commands:\n"
           "  signatures     admissible signatures for order 4*lambda*p and genus 2(p-1), with realizing groups\n"
           "  groups         catalogue of groups of order 4*lambda*p\n"
           "  skes           generating vectors of --group for --signature (--count prints the number)\n"
           "  classes        Aut, topological and isomorphism classes of those vectors\n"
           "  classify       full classification report for the prime\n"
           "  jacobian       group algebra decomposition for each topological class\n"
           "  verify-bounds  search groups of order 4*lambda*p for lambda in --lambda A..B\n"
           "options:\n"
           "  --prime P          prime >= 5\n"
           "  --group DESC       group descriptor, e.g. Zp*Z2^2, D(2p), Zp:3A4, Zp*D(4)\n"
           "  --signature SIG    h;m1,m2,... with tokens p, 2p, 4p, e.g. 0;2,2,p,2p\n"
           "  --lambda A..B      range of lambda (a single value A is accepted)\n"
           "  --format F         text (default), json or csv\n"
           "  --out FILE         write to FILE instead of stdout\n"
           "  --jobs N           worker threads, 0 for all cores\n"
           "  --count            print only the number of vectors (skes)\n";
}

struct Options {
    int prime = 0;
    std::string group;
    std::string signature;
    std::string lambda;
    std::string format = "text";
    std::string out;
    int jobs = 0;
    bool count = false;
};

struct Output {
    std::string body;
    int status = 0;
};

namespace detail {

inline std::pair<int, int> parse_lambda(const std::string& text, int lo, int hi)
{
    if (text.empty()) return {lo, hi};
    auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            int a = std::stoi(text, &used);
            if (used != text.size()) throw UsageError("");
            return {a, a};
        }
        std::string sa = text.substr(0, dots), sb = text.substr(dots + 2);
        int a = std::stoi(sa, &used);
        if (used != sa.size()) throw UsageError("");
        int b = std::stoi(sb, &used);
        if (used != sb.size()) throw UsageError("");
        return {a, b};
    } catch (const std::logic_error&) {
        throw UsageError("--lambda expects A..B, got '" + text + "'");
    } catch (const UsageError&) {
        throw UsageError("--lambda expects A..B, got '" + text + "'");
    }
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline std::string csv(const std::vector<std::vector<std::string>>& rows)
{
    std::string s;
    for (auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + csv_field(r[i]);
        s += "\n";
    }
    return s;
}

inline nlohmann::json header(const std::string& command, int p)
{
    return {{"schema", "rsclass/1"}, {"command", command}, {"p", p}};
}

inline Group require_group(const Options& o)
{
    if (o.group.empty()) throw UsageError("--group is required");
    try {
        Group G = make_group(o.group, o.prime);
        return G;
    } catch (const GroupError& e) {
        throw UsageError(e.what());
    }
}

inline Signature require_signature(const Options& o)
{
    if (o.signature.empty()) throw UsageError("--signature is required");
    return parse_signature(o.signature, o.prime);
}

inline std::string render(const Options& o, const nlohmann::json& j, const std::string& text,
                          const std::vector<std::vector<std::string>>& rows)
{
    if (o.format == "json") return j.dump(2) + "\n";
    if (o.format == "csv") return csv(rows);
    return text;
}

}  // namespace detail

inline Output cmd_signatures(const Options& o)
{
    auto [lo, hi] = detail::parse_lambda(o.lambda, 1, 1);
    if (lo < 1 || hi < lo) throw UsageError("--lambda must satisfy 1 <= A <= B");
    const int genus = 2 * (o.prime - 1);
    ExtensionEngine E(o.prime, o.jobs);
    auto j = detail::header("signatures", o.prime);
    j["genus"] = genus;
    j["orders"] = nlohmann::json::array();
    std::ostringstream text;
    std::vector<std::vector<std::string>> rows{{"order", "signature", "teichmuller_dim", "group", "skes"}};
    for (int lambda = lo; lambda <= hi; ++lambda) {
        const int order = 4 * lambda * o.prime;
        nlohmann::json jo{{"order", order}, {"signatures", nlohmann::json::array()}};
        text << "order " << order << ", genus " << genus << "\n";
        const Catalogue* C = nullptr;
        auto sigs = admissible_signatures(order, genus);
        if (!sigs.empty() && lambda % o.prime != 0) C = &E.catalogue_for(order);
        for (const auto& s : sigs) {
            nlohmann::json js{{"signature", s.str()}, {"teichmuller_dim", teichmuller_dimension(s)},
                              {"realized_by", nlohmann::json::array()}};
            std::vector<std::string> by;
            if (C && s.h == 0 && s.r() <= 4)
                for (const auto& G : C->groups) {
                    auto n = enumerate_skes(G, s, o.jobs).size();
                    if (n == 0) continue;
                    js["realized_by"].push_back({{"group", G.tag}, {"skes", n}});
                    by.push_back(G.tag + " (" + std::to_string(n) + ")");
                    rows.push_back({std::to_string(order), s.str(), std::to_string(teichmuller_dimension(s)), G.tag,
                                    std::to_string(n)});
                }
            if (by.empty())
                rows.push_back({std::to_string(order), s.str(), std::to_string(teichmuller_dimension(s)), "", "0"});
            text << "  " << s.str() << "  dim " << teichmuller_dimension(s) << "  "
                 << (by.empty() ? std::string("not realized") : rsclass::detail::join(by)) << "\n";
            jo["signatures"].push_back(js);
        }
        if (C) jo["catalogue_complete"] = C->complete;
        j["orders"].push_back(jo);
    }
    return {detail::render(o, j, text.str(), rows), 0};
}

inline Output cmd_groups(const Options& o)
{
    auto [lo, hi] = detail::parse_lambda(o.lambda, 1, 1);
    if (lo < 1 || hi < lo) throw UsageError("--lambda must satisfy 1 <= A <= B");
    auto j = detail::header("groups", o.prime);
    j["catalogues"] = nlohmann::json::array();
    std::ostringstream text;
    std::vector<std::vector<std::string>> rows{{"order", "group", "complete"}};
    for (int lambda = lo; lambda <= hi; ++lambda) {
        const int order = 4 * lambda * o.prime;
        if (lambda % o.prime == 0) throw UsageError("p divides lambda = " + std::to_string(lambda));
        auto C = catalogue(order, o.prime);
        nlohmann::json jc{{"order", order}, {"complete", C.complete}, {"groups", nlohmann::json::array()}};
        if (!C.note.empty()) jc["note"] = C.note;
        text << "order " << order << ": " << C.groups.size() << " groups" << (C.complete ? "" : " (conditional)") << "\n";
        for (const auto& G : C.groups) {
            jc["groups"].push_back(G.tag);
            text << "  " << G.tag << "\n";
            rows.push_back({std::to_string(order), G.tag, C.complete ? "true" : "false"});
        }
        if (!C.note.empty()) text << "  note: " << C.note << "\n";
        j["catalogues"].push_back(jc);
    }
    return {detail::render(o, j, text.str(), rows), 0};
}

inline Output cmd_skes(const Options& o)
{
    Group G = detail::require_group(o);
    Signature s = detail::require_signature(o);
    auto skes = enumerate_skes(G, s, o.jobs);
    if (o.count) {
        if (o.format == "json") {
            auto j = detail::header("skes", o.prime);
            j["group"] = G.tag;
            j["signature"] = s.str();
            j["count"] = skes.size();
            return {j.dump(2) + "\n", 0};
        }
        return {std::to_string(skes.size()) + "\n", 0};
    }
    auto j = detail::header("skes", o.prime);
    j["group"] = G.tag;
    j["signature"] = s.str();
    j["count"] = skes.size();
    j["skes"] = nlohmann::json::array();
    std::ostringstream text;
    std::vector<std::vector<std::string>> rows{{"index", "ske"}};
    for (std::size_t i = 0; i < skes.size(); ++i) {
        auto t = rsclass::detail::tuple_names(G, skes[i]);
        j["skes"].push_back(t);
        text << t << "\n";
        rows.push_back({std::to_string(i), t});
    }
    return {detail::render(o, j, text.str(), rows), 0};
}

inline Output cmd_classes(const Options& o)
{
    Group G = detail::require_group(o);
    Signature s = detail::require_signature(o);
    ExtensionEngine E(o.prime, o.jobs);
    const auto& T = E.topology(G, s);
    auto aut = aut_classes(T.skes, *T.aut);
    std::vector<ActionClass> iso;
    bool iso_known = true;
    try {
        iso = isomorphism_classes(G, s, T.orbits, *T.aut, o.prime);
    } catch (const UnsupportedError&) {
        iso_known = false;
    }
    auto j = detail::header("classes", o.prime);
    j["group"] = G.tag;
    j["signature"] = s.str();
    j["skes"] = T.skes.size();
    j["aut_classes"] = aut.size();
    j["topological_classes"] = T.orbits.classes.size();
    j["isomorphism_classes"] = iso_known ? nlohmann::json(iso.size()) : nlohmann::json(nullptr);
    std::ostringstream text;
    text << G.tag << " " << s.str() << ": " << T.skes.size() << " vectors, " << aut.size() << " Aut classes, "
         << T.orbits.classes.size() << " topological classes, "
         << (iso_known ? std::to_string(iso.size()) : std::string("undecided")) << " isomorphism classes\n";
    std::vector<std::vector<std::string>> rows{{"equivalence", "index", "representative", "size"}};
    auto list = [&](const std::string& name, const std::vector<ActionClass>& cls) {
        j[name] = nlohmann::json::array();
        text << name << "\n";
        for (std::size_t i = 0; i < cls.size(); ++i) {
            auto t = rsclass::detail::tuple_names(G, cls[i].representative);
            j[name].push_back({{"representative", t}, {"size", cls[i].orbit_size}});
            text << "  " << i << " " << t << " size " << cls[i].orbit_size << "\n";
            rows.push_back({name, std::to_string(i), t, std::to_string(cls[i].orbit_size)});
        }
    };
    list("topological", T.orbits.classes);
    if (iso_known) list("isomorphism", iso);
    return {detail::render(o, j, text.str(), rows), 0};
}

inline Output cmd_jacobian(const Options& o)
{
    Group G = detail::require_group(o);
    Signature s = detail::require_signature(o);
    ExtensionEngine E(o.prime, o.jobs);
    const auto& T = E.topology(G, s);
    auto j = detail::header("jacobian", o.prime);
    j["group"] = G.tag;
    j["signature"] = s.str();
    j["classes"] = nlohmann::json::array();
    std::ostringstream text;
    std::vector<std::vector<std::string>> rows{{"class", "irrep", "degree", "field_degree", "n", "dim"}};
    for (std::size_t i = 0; i < T.orbits.classes.size(); ++i) {
        const auto& v = T.orbits.classes[i].representative;
        auto R = group_algebra_decomposition(G, s, v);
        auto t = rsclass::detail::tuple_names(G, v);
        j["classes"].push_back({{"representative", t}, {"decomposition", R.to_json()}});
        text << "class " << i << " " << t << "\n";
        for (auto& row : R.nonzero()) {
            text << "  irrep " << row.irrep_id << ": degree " << row.degree << ", field degree " << row.field_degree
                 << ", n " << row.n << ", dim " << row.dim << "\n";
            rows.push_back({std::to_string(i), std::to_string(row.irrep_id), std::to_string(row.degree),
                            std::to_string(row.field_degree), std::to_string(row.n), std::to_string(row.dim)});
        }
        for (auto& q : R.quotients)
            if (q.genus > 0) text << "  genus of X/" << q.name << " = " << q.genus << "\n";
    }
    return {detail::render(o, j, text.str(), rows), 0};
}

inline Output cmd_verify_bounds(const Options& o)
{
    auto [lo, hi] = detail::parse_lambda(o.lambda, 2, 21);
    ExtensionEngine E(o.prime, o.jobs);
    auto V = verify_large_orders(o.prime, lo, hi, E);
    auto checks = check_large_orders(o.prime, V);
    bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    auto j = detail::header("verify-bounds", o.prime);
    j["lambda"] = {lo, hi};
    j["verdicts"] = nlohmann::json::array();
    for (auto& v : V) j["verdicts"].push_back(rsclass::detail::lambda_json(v));
    j["checks"] = nlohmann::json::array();
    for (auto& c : checks) j["checks"].push_back({{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}});
    j["all_pass"] = ok;
    std::ostringstream text;
    std::vector<std::vector<std::string>> rows{{"lambda", "order", "verdict", "conditional", "classes"}};
    for (auto& v : V) {
        text << rsclass::detail::lambda_text(v);
        std::vector<std::string> labels;
        for (auto& r : v.reps) labels.push_back(r.label);
        rows.push_back({std::to_string(v.lambda), std::to_string(v.order), v.verdict, v.conditional ? "true" : "false",
                        rsclass::detail::join(labels, " ")});
    }
    for (auto& c : checks) text << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.detail << "\n";
    return {detail::render(o, j, text.str(), rows), ok ? 0 : 1};
}

inline Output cmd_classify(const Options& o)
{
    ExtensionEngine E(o.prime, o.jobs);
    auto L = classify_locus(o.prime, E);
    std::vector<std::vector<std::string>> rows{{"check", "result", "detail"}};
    for (auto& c : L.checks) rows.push_back({c.id, c.pass ? "PASS" : "FAIL", c.detail});
    return {detail::render(o, L.to_json(), L.to_text(), rows), L.all_pass() ? 0 : 1};
}

// Parses argv, runs one command and writes its output. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"rsclass", "rsclass"};
    app.set_help_flag("-h,--help", "print help");
    app.require_subcommand(1, 1);
    const std::vector<std::string> names{"signatures", "groups", "skes", "classes", "classify", "jacobian", "verify-bounds"};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name, name);
        sub->add_option("--prime", o.prime, "prime >= 5")->required();
        sub->add_option("--group", o.group, "group descriptor");
        sub->add_option("--signature", o.signature, "signature h;m1,m2,...");
        sub->add_option("--lambda", o.lambda, "lambda range A..B");
        sub->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--out", o.out, "output file");
        sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::NonNegativeNumber);
        sub->add_flag("--count", o.count, "print only the count");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << grammar();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << grammar();
        return 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    Output result;
    try {
        if (o.prime < 5 || !is_prime(o.prime)) throw UsageError("--prime must be a prime >= 5");
        if (command == "signatures") result = cmd_signatures(o);
        else if (command == "groups") result = cmd_groups(o);
        else if (command == "skes") result = cmd_skes(o);
        else if (command == "classes") result = cmd_classes(o);
        else if (command == "classify") result = cmd_classify(o);
        else if (command == "jacobian") result = cmd_jacobian(o);
        else result = cmd_verify_bounds(o);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << grammar();
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n" << grammar();
        return 2;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const GroupError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "verification error: " << e.what() << "\n";
        return 1;
    }
    if (o.out.empty()) {
        out << result.body;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) {
            err << "error: cannot open " << o.out << "\n";
            return 2;
        }
        f << result.body;
    }
    return result.status;
}

}  // namespace rsclass::cli

#endif
