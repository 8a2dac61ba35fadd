// sidon-lattice: command-line front end.
//
// Exit codes: 0 ok/found, 2 usage or parse error, 3 exhaustive search found
// nothing, 4 search budget exhausted, 5 verification failed.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sidon.hpp"
#include "sidon/serialize.hpp"

namespace {

using sidon::io::json;

enum Exit { kOk = 0, kUsage = 2, kAbsent = 3, kBudget = 4, kVerifyFail = 5 };

struct Globals {
    bool json_out = false;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::uint64_t max_nodes = 0;
    double timeout_s = 0;
    std::int64_t limit = -1;

    sidon::SearchOptions search() const { return {max_nodes, timeout_s, threads}; }
};

// What a command hands back: JSON payload, a plain-text rendering, and the exit code.
struct Outcome {
    json payload;
    std::string text;
    int exit = kOk;
    std::string status = "ok";
};

// ---------------------------------------------------------------------------
// Plain-text helpers

class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str() const {
        std::vector<std::size_t> width;
        for (const auto& r : rows_)
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (width.size() <= i) width.push_back(0);
                width[i] = std::max(width[i], r[i].size());
            }
        std::ostringstream os;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            for (std::size_t i = 0; i < rows_[k].size(); ++i)
                os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << rows_[k][i];
            os << '\n';
            if (k == 0) {
                std::size_t total = 0;
                for (auto w : width) total += w + 2;
                os << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
            }
        }
        return os.str();
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string kv(const std::vector<std::pair<std::string, std::string>>& items) {
    std::size_t w = 0;
    for (const auto& [k, v] : items) w = std::max(w, k.size());
    std::ostringstream os;
    for (const auto& [k, v] : items) os << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << '\n';
    return os.str();
}

std::string text_of(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

template <typename T>
std::string join(const std::vector<T>& xs, const char* sep = ", ") {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
    return os.str();
}

std::string group_text(const sidon::AbelianGroup& g) { return g.to_string(); }

std::string elements_text(const sidon::AbelianGroup& g, const std::vector<sidon::GroupElement>& elems) {
    std::vector<std::string> parts;
    for (const auto& e : elems) parts.push_back(sidon::io::element_to_json(g, e).dump());
    return "{" + join(parts) + "}";
}

std::string matrix_text(const sidon::IntegerMatrix& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << std::setw(6) << m(i, j);
        os << " ]\n";
    }
    return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// Input helpers

json read_json_file(const std::string& path) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) sidon::fail(sidon::ErrorCode::ParseError, "cannot open " + path);
        in = &file;
    }
    try {
        return json::parse(*in);
    } catch (const json::parse_error& e) {
        sidon::fail(sidon::ErrorCode::ParseError, path + ": " + e.what());
    }
}

// Finds an artifact of the given type in a raw document or inside the
// payload of a command result.
const json* find_artifact(const json& doc, const std::string& type) {
    if (!doc.is_object()) return nullptr;
    if (doc.value("type", std::string()) == type) return &doc;
    for (const char* key : {"payload", "code", "set"})
        if (doc.contains(key))
            if (const json* hit = find_artifact(doc.at(key), type)) return hit;
    return nullptr;
}

const json& require_artifact(const json& doc, const std::string& type, const std::string& path) {
    const json* a = find_artifact(doc, type);
    if (!a) sidon::fail(sidon::ErrorCode::ParseError, path + " does not contain a " + type + " document");
    return *a;
}

struct LoadedSet {
    sidon::io::SetDocument doc;
    json raw;
};

LoadedSet load_set(const std::string& path) {
    json doc = read_json_file(path);
    const json* a = find_artifact(doc, "difference-set");
    if (!a) a = find_artifact(doc, "bh-set");
    if (!a) sidon::fail(sidon::ErrorCode::ParseError, path + " does not contain a set document");
    return {sidon::io::set_from_json(*a), *a};
}

struct LoadedCode {
    sidon::LatticeCode lattice;
    std::optional<sidon::FiniteCode> finite;
};

LoadedCode load_code(const std::string& path) {
    json doc = read_json_file(path);
    const json& a = require_artifact(doc, "code", path);
    return {sidon::io::code_from_json(a), sidon::io::finite_code_from_json(a)};
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            sidon::fail(sidon::ErrorCode::ParseError, "not an integer list: " + s);
        }
    }
    return out;
}

void write_artifact(const std::optional<std::string>& path, const json& artifact) {
    if (!path) return;
    std::ofstream out(*path);
    if (!out) sidon::fail(sidon::ErrorCode::InvalidArgument, "cannot write " + *path);
    out << artifact.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// construct

Outcome set_outcome(const sidon::DifferenceSet& d, const std::string& title) {
    auto code = sidon::lattice_from_set(d);
    const bool perfect = d.params.lambda == 1 && sidon::check_perfect(code, 1);
    Outcome o;
    o.payload = {{"set", sidon::io::to_json(d)},
                 {"code", sidon::io::to_json(code)},
                 {"verified", {{"v", d.params.v}, {"k", d.params.k}, {"lambda", d.params.lambda}}},
                 {"perfect_r1", perfect}};
    o.text = title + "\n" +
             kv({{"group", group_text(d.group)},
                 {"set", elements_text(d.group, d.elements)},
                 {"(v,k,lambda)", "(" + std::to_string(d.params.v) + "," + std::to_string(d.params.k) + "," +
                                      std::to_string(d.params.lambda) + ")"},
                 {"order n", std::to_string(d.order())},
                 {"1-perfect code", yes_no(perfect)}}) +
             "lattice basis:\n" + matrix_text(code.basis());
    return o;
}

Outcome bh_outcome(const sidon::BhSet& b) {
    const bool ok = sidon::verify_bh(b.group, b.elements, b.h);
    Outcome o;
    json payload = {{"set", sidon::io::to_json(b)}, {"verified_bh", ok}};
    std::string code_line = "n/a";
    if (b.elements.size() >= 2) {
        // the set may span a proper subgroup; the kernel lattice is still a packing
        auto code = sidon::kernel_lattice(b);
        payload["code"] = sidon::io::to_json(code);
        payload["generates_group"] = code.det_abs() == b.group.order();
        code_line = "index " + code.det_abs().str();
        if (code.det_abs() != b.group.order()) code_line += " (set spans a proper subgroup)";
    }
    o.payload = std::move(payload);
    o.text = "Bose-Chowla B_" + std::to_string(b.h) + " set\n" +
             kv({{"group", group_text(b.group)},
                 {"set", elements_text(b.group, b.elements)},
                 {"B_h verified", yes_no(ok)},
                 {"lattice", code_line}});
    if (!ok) o.exit = kVerifyFail;
    return o;
}

Outcome family_outcome(const sidon::LatticeCode& code, const std::string& title, bool tiling) {
    const std::int64_t r = *code.source().r;
    const auto n = static_cast<std::int64_t>(code.n());
    const bool pass = tiling ? sidon::check_tiling(code, sidon::Shape(n, r + 1, r)) : sidon::check_perfect(code, r);
    Outcome o;
    o.payload = {{"code", sidon::io::to_json(code)}, {tiling ? "tiling" : "perfect", pass}};
    o.text = title + "\n" +
             kv({{"dimension", std::to_string(n)},
                 {"det", code.det_abs().str()},
                 {"quotient", group_text(code.quotient().group())},
                 {tiling ? "tiles with S(r+1,r)" : "perfect", yes_no(pass)}}) +
             "basis:\n" + matrix_text(code.basis());
    if (!pass) o.exit = kVerifyFail;
    return o;
}

// ---------------------------------------------------------------------------
// search

Outcome search_outcome(const sidon::SearchReport& rep) {
    Outcome o;
    o.payload = sidon::io::to_json(rep);
    std::vector<std::pair<std::string, std::string>> rows{{"search", rep.kind}};
    for (const auto& [k, v] : rep.parameters) rows.emplace_back(k, std::to_string(v));
    rows.emplace_back("nodes", std::to_string(rep.nodes_explored));
    switch (rep.status()) {
    case sidon::SearchStatus::Found:
        rows.emplace_back("result", "found");
        rows.emplace_back("group", group_text(rep.found->group));
        rows.emplace_back("set", elements_text(rep.found->group, rep.found->elements));
        if (rep.phi) rows.emplace_back("phi", std::to_string(*rep.phi));
        break;
    case sidon::SearchStatus::ExhaustiveAbsent:
        rows.emplace_back("result", "none exists (exhaustive)");
        o.exit = kAbsent;
        o.status = "not-found";
        break;
    case sidon::SearchStatus::BudgetExhausted:
        rows.emplace_back("result", "budget exhausted, inconclusive");
        o.exit = kBudget;
        o.status = "not-found";
        break;
    }
    o.text = kv(rows);
    return o;
}

// ---------------------------------------------------------------------------
// decode / simulate

Outcome decode_outcome(const LoadedCode& code, const std::vector<std::int64_t>& word, std::int64_t rp, std::int64_t rm) {
    sidon::Decoded d;
    json syndrome;
    if (code.finite) {
        auto table = sidon::build_syndrome_table(*code.finite, rp, rm);
        d = sidon::decode_radius_r(table, *code.finite, word);
        syndrome = sidon::syndrome(*code.finite, word);
    } else {
        auto table = sidon::build_syndrome_table(code.lattice, rp, rm);
        d = sidon::decode_radius_r(table, word);
        syndrome = sidon::io::element_to_json(table.group(), table.syndrome_of(word));
    }
    Outcome o;
    const bool ok = d.status == sidon::DecodeStatus::Corrected;
    o.payload = {{"type", "decode-result"},
                 {"received", word},
                 {"syndrome", syndrome},
                 {"status", ok ? "corrected" : "detected"},
                 {"codeword", ok ? json(d.codeword) : json(nullptr)},
                 {"error", ok ? json(d.error) : json(nullptr)}};
    o.text = kv({{"received", "(" + join(word) + ")"},
                 {"syndrome", text_of(syndrome)},
                 {"status", ok ? "corrected" : "detected (uncorrectable)"},
                 {"codeword", ok ? "(" + join(d.codeword) + ")" : "-"},
                 {"error", ok ? "(" + join(d.error) + ")" : "-"}});
    return o;
}

// ---------------------------------------------------------------------------
// bounds

Outcome bounds_outcome(std::optional<std::int64_t> h, std::optional<std::int64_t> k, std::optional<std::int64_t> v) {
    json bounds = json::array(), skipped = json::array();
    Table table({"bound", "inputs", "direction", "value"});
    auto attempt = [&](const char* id, auto&& fn) {
        try {
            auto b = fn();
            bounds.push_back(sidon::io::to_json(b));
            std::vector<std::string> in;
            for (const auto& [name, x] : b.inputs) in.push_back(name + "=" + std::to_string(x));
            std::string value = b.exact ? b.exact->str() : "";
            std::ostringstream approx;
            approx << std::setprecision(12) << b.lower.template convert_to<double>();
            if (!b.exact || denominator(*b.exact) != 1) value += (value.empty() ? "~" : " ~ ") + approx.str();
            table.add({id, join(in, " "), b.is_lower_bound ? "phi >" : "<", value});
        } catch (const sidon::Error& e) {
            skipped.push_back({{"formula_id", id}, {"reason", e.what()}});
        }
    };
    if (h && k) attempt("phi_k", [&] { return sidon::bound_phi_k(*h, *k); });
    if (h && k) attempt("phi_h", [&] { return sidon::bound_phi_h(*h, *k); });
    if (h && v) attempt("f_h", [&] { return sidon::bound_f_h(*h, *v); });
    if (k && v) attempt("h_k", [&] { return sidon::bound_h_k(*k, *v); });
    if (bounds.empty() && skipped.empty())
        sidon::fail(sidon::ErrorCode::InvalidArgument, "give at least two of --h, --k, --v");
    Outcome o;
    o.payload = {{"type", "bounds"}, {"bounds", bounds}, {"skipped", skipped}};
    o.text = table.str();
    for (const auto& s : skipped) o.text += "skipped " + s["formula_id"].get<std::string>() + ": " + s["reason"].get<std::string>() + "\n";
    if (bounds.empty()) o.exit = kUsage, o.status = "error";
    return o;
}

// ---------------------------------------------------------------------------
// experiments

std::vector<std::pair<std::string, sidon::LatticeCode>> cyclicity_corpus(std::int64_t q_max) {
    std::vector<std::pair<std::string, sidon::LatticeCode>> codes;
    codes.emplace_back("perfect-a1 r=1", sidon::perfect_code_A1(1));
    codes.emplace_back("perfect-a2 r=1", sidon::perfect_code_A2(1));
    for (std::int64_t q = 2; q <= q_max; ++q)
        if (sidon::as_prime_power(q)) codes.emplace_back("singer q=" + std::to_string(q), sidon::lattice_from_set(sidon::singer(q)));
    for (std::int64_t r = 1; r <= 2; ++r) codes.emplace_back("tiling-s2 r=" + std::to_string(r), sidon::tiling_lattice_S2(r));
    return codes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Difference sets, B_h sets and lattice codes in A_n"};
    // "--h" is a real option here (the B_h parameter), so help is long-form only
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json_out, "Emit a JSON command result instead of text");
    app.add_option("--seed", g.seed, "Seed for randomized commands");
    app.add_option("--threads", g.threads, "Worker threads for search and simulation")->check(CLI::PositiveNumber);
    app.add_option("--max-nodes", g.max_nodes, "Search node budget (0 = unlimited)");
    app.add_option("--timeout-s", g.timeout_s, "Search time budget in seconds (0 = unlimited)");
    app.add_option("--limit", g.limit, "Cap on emitted items for streaming output");

    std::function<Outcome()> run;
    std::optional<std::string> out_path;

    // construct
    auto* construct = app.add_subcommand("construct", "Build a set or lattice from a known family");
    construct->require_subcommand(1);
    std::int64_t q = 0, h = 2, r = 0;
    {
        auto* c = construct->add_subcommand("singer", "Planar difference set of order q");
        c->add_option("--q", q, "Prime power")->required();
        c->add_option("--out", out_path, "Write the set JSON to this file");
        c->callback([&] {
            run = [&] {
                auto d = sidon::singer(q);
                auto o = set_outcome(d, "Singer difference set, q = " + std::to_string(q));
                write_artifact(out_path, o.payload["set"]);
                return o;
            };
        });
        auto* b = construct->add_subcommand("bose-chowla", "B_h set of size q in Z_{q^h - 1}");
        b->add_option("--q", q, "Prime power")->required();
        b->add_option("--h", h, "Order h")->required();
        b->add_option("--out", out_path, "Write the set JSON to this file");
        b->callback([&] {
            run = [&] {
                auto o = bh_outcome(sidon::bose_chowla(q, h));
                write_artifact(out_path, o.payload["set"]);
                return o;
            };
        });
        struct Family {
            const char* name;
            const char* help;
            sidon::LatticeCode (*make)(std::int64_t);
            bool tiling;
        };
        static const Family families[] = {
            {"perfect-a1", "r-perfect code in A_1", &sidon::perfect_code_A1, false},
            {"perfect-a2", "r-perfect code in A_2", &sidon::perfect_code_A2, false},
            {"tiling-s2", "Lattice tiling Z^2 with S_2(r+1, r)", &sidon::tiling_lattice_S2, true},
        };
        for (const auto& f : families) {
            auto* s = construct->add_subcommand(f.name, f.help);
            s->add_option("--r", r, "Radius")->required();
            s->add_option("--out", out_path, "Write the code JSON to this file");
            s->callback([&, fam = &f] {
                run = [&, fam] {
                    auto o = family_outcome(fam->make(r), fam->name, fam->tiling);
                    write_artifact(out_path, o.payload["code"]);
                    return o;
                };
            });
        }
    }

    // search
    auto* search = app.add_subcommand("search", "Exhaustive searches");
    search->require_subcommand(1);
    std::int64_t n = 0, k = 0, v_max = 0;
    {
        auto* p = search->add_subcommand("planar", "Planar difference set of order n in Z_{n^2+n+1}");
        p->add_option("--n", n, "Order")->required()->check(CLI::PositiveNumber);
        p->callback([&] { run = [&] { return search_outcome(sidon::search_planar(n, g.search())); }; });
        auto* m = search->add_subcommand("min-group", "Smallest abelian group with a B_h set of size k");
        m->add_option("--h", h, "Order h")->required();
        m->add_option("--k", k, "Set size")->required();
        m->add_option("--max-v", v_max, "Largest group order to try")->required();
        m->callback([&] { run = [&] { return search_outcome(sidon::search_min_group(h, k, v_max, g.search())); }; });
    }

    // verify
    auto* verify = app.add_subcommand("verify", "Check sets and codes");
    verify->require_subcommand(1);
    std::string set_path, code_path;
    std::optional<std::string> group_spec, elements_spec;
    std::optional<std::int64_t> h_opt;
    std::int64_t rp = 1, rm = 1;
    {
        auto* d = verify->add_subcommand("dset", "Difference set check");
        auto* bh = verify->add_subcommand("bh", "B_h set check");
        for (auto* s : {d, bh}) {
            auto* file = s->add_option("--set", set_path, "Set JSON file ('-' for stdin)");
            auto* grp = s->add_option("--group", group_spec, "Invariant factors, comma separated");
            s->add_option("--elements", elements_spec, "Cyclic-group elements, comma separated")->needs(grp);
            file->excludes(grp);
        }
        bh->add_option("--h", h_opt, "Order h (defaults to the file's h)");
        auto load = [&]() -> sidon::io::SetDocument {
            if (!set_path.empty()) return load_set(set_path).doc;
            if (!group_spec || !elements_spec)
                sidon::fail(sidon::ErrorCode::InvalidArgument, "give --set or --group with --elements");
            sidon::io::SetDocument doc;
            doc.group = sidon::AbelianGroup::make(parse_int_list(*group_spec));
            for (auto x : parse_int_list(*elements_spec)) doc.elements.push_back(doc.group.element({x}));
            return doc;
        };
        d->callback([&, load] {
            run = [&, load] {
                auto doc = load();
                auto params = sidon::verify_difference_set(doc.group, doc.elements);
                Outcome o;
                o.payload = {{"type", "dset-report"}, {"is_difference_set", params.has_value()}};
                std::vector<std::pair<std::string, std::string>> rows{
                    {"group", group_text(doc.group)}, {"set", elements_text(doc.group, doc.elements)}};
                if (params) {
                    o.payload["params"] = {{"v", params->v}, {"k", params->k}, {"lambda", params->lambda}};
                    rows.emplace_back("difference set", "yes");
                    rows.emplace_back("(v,k,lambda)", "(" + std::to_string(params->v) + "," + std::to_string(params->k) +
                                                          "," + std::to_string(params->lambda) + ")");
                } else {
                    rows.emplace_back("difference set", "no");
                    o.exit = kVerifyFail;
                }
                o.text = kv(rows);
                return o;
            };
        });
        bh->callback([&, load] {
            run = [&, load] {
                auto doc = load();
                const std::int64_t hh = h_opt.value_or(doc.h);
                const bool ok = sidon::verify_bh(doc.group, doc.elements, hh);
                Outcome o;
                o.payload = {{"type", "bh-report"}, {"h", hh}, {"is_bh", ok}};
                o.text = kv({{"group", group_text(doc.group)},
                             {"set", elements_text(doc.group, doc.elements)},
                             {"B_" + std::to_string(hh), yes_no(ok)}});
                if (!ok) o.exit = kVerifyFail;
                return o;
            };
        });

        auto* cover = verify->add_subcommand("cover", "(r, i, j) cover profile of a lattice code");
        cover->add_option("--code", code_path, "Code JSON file")->required();
        cover->add_option("--r", r, "Radius")->required();
        cover->callback([&] {
            run = [&] {
                auto code = load_code(code_path);
                auto rep = sidon::check_cover(code.lattice, r);
                Outcome o;
                o.payload = sidon::io::to_json(rep, code.lattice.quotient().group());
                auto show = [](const std::optional<std::int64_t>& x) { return x ? std::to_string(*x) : std::string("nonuniform"); };
                o.text = kv({{"r", std::to_string(rep.r)}, {"i", show(rep.i)}, {"j", show(rep.j)}, {"cover", yes_no(rep.is_cover)}});
                if (rep.is_cover) o.text += "(" + std::to_string(rep.r) + "," + show(rep.i) + "," + show(rep.j) + ")-cover\n";
                if (!rep.is_cover) o.exit = kVerifyFail;
                return o;
            };
        });
        auto* perfect = verify->add_subcommand("perfect", "Is the code r-perfect");
        perfect->add_option("--code", code_path, "Code JSON file")->required();
        perfect->add_option("--r", r, "Radius")->required();
        perfect->callback([&] {
            run = [&] {
                auto code = load_code(code_path);
                const bool ok = sidon::check_perfect(code.lattice, r);
                Outcome o;
                o.payload = {{"type", "perfect-report"}, {"r", r}, {"perfect", ok}};
                o.text = kv({{"det", code.lattice.det_abs().str()}, {"r", std::to_string(r)}, {"perfect", yes_no(ok)}});
                if (!ok) o.exit = kVerifyFail;
                return o;
            };
        });
        auto* tiling = verify->add_subcommand("tiling", "Does the lattice tile Z^n with S_n(r+, r-)");
        tiling->add_option("--code", code_path, "Code JSON file")->required();
        tiling->add_option("--rplus", rp, "r+")->required();
        tiling->add_option("--rminus", rm, "r-")->required();
        tiling->callback([&] {
            run = [&] {
                auto code = load_code(code_path);
                const sidon::Shape shape(static_cast<std::int64_t>(code.lattice.n()), rp, rm);
                const bool packing = sidon::check_packing(code.lattice, shape);
                const bool ok = packing && sidon::check_tiling(code.lattice, shape);
                Outcome o;
                o.payload = {{"type", "tiling-report"}, {"r_plus", rp}, {"r_minus", rm}, {"packing", packing}, {"tiling", ok}};
                o.text = kv({{"shape size", sidon::shape_size(shape).str()},
                             {"det", code.lattice.det_abs().str()},
                             {"packing", yes_no(packing)},
                             {"tiling", yes_no(ok)}});
                if (!ok) o.exit = kVerifyFail;
                return o;
            };
        });
    }

    // code build / decode, plus top-level decode
    auto* code_cmd = app.add_subcommand("code", "Lattice codes from sets; decoding");
    code_cmd->require_subcommand(1);
    std::string word_spec;
    {
        auto* build = code_cmd->add_subcommand("build", "Lattice code of a difference set or B_h set");
        build->add_option("--set", set_path, "Set JSON file ('-' for stdin)")->required();
        build->add_option("--out", out_path, "Write the code JSON to this file");
        build->callback([&] {
            run = [&] {
                auto doc = load_set(set_path).doc;
                auto code = doc.type == "bh-set"
                                ? sidon::kernel_lattice(sidon::make_bh_set(doc.group, doc.elements, doc.h))
                                : sidon::lattice_from_set(doc.group, doc.elements);
                Outcome o;
                o.payload = sidon::io::to_json(code);
                write_artifact(out_path, o.payload);
                o.text = kv({{"n", std::to_string(code.n())},
                             {"det", code.det_abs().str()},
                             {"quotient", group_text(code.quotient().group())}}) +
                         "basis:\n" + matrix_text(code.basis());
                return o;
            };
        });
        auto decode_cb = [&] {
            run = [&] {
                auto code = load_code(code_path);
                return decode_outcome(code, parse_int_list(word_spec), rp, rm);
            };
        };
        auto* dec = code_cmd->add_subcommand("decode", "Syndrome-decode a received word");
        auto* alias = app.add_subcommand("decode", "Same as 'code decode'");
        for (auto* s : {dec, alias}) {
            s->add_option("--code", code_path, "Code JSON file")->required();
            s->add_option("--word", word_spec, "Received word, comma separated")->required();
            s->add_option("--rplus", rp, "Correctable insertions (default 1)");
            s->add_option("--rminus", rm, "Correctable deletions (default 1)");
            s->callback(decode_cb);
        }
    }

    // simulate
    std::int64_t trials = 0, extra = 1;
    std::string mode = "uniform";
    {
        auto* sim = app.add_subcommand("simulate", "Monte Carlo run over the insertion/deletion channel");
        sim->add_option("--code", code_path, "Code JSON file")->required();
        sim->add_option("--rplus", rp, "Channel insertions r+ (default 1)");
        sim->add_option("--rminus", rm, "Channel deletions r- (default 1)");
        sim->add_option("--trials", trials, "Number of trials")->required()->check(CLI::NonNegativeNumber);
        sim->add_option("--mode", mode, "uniform | overload")->check(CLI::IsMember({"uniform", "overload"}));
        sim->add_option("--extra", extra, "Overload margin beyond the design radii");
        sim->callback([&] {
            run = [&] {
                if (!g.seed) sidon::fail(sidon::ErrorCode::InvalidArgument, "simulate needs an explicit --seed");
                auto code = load_code(code_path);
                sidon::ChannelConfig cfg{rp, rm, mode == "uniform" ? sidon::ErrorMode::UniformInShape : sidon::ErrorMode::Overload,
                                         extra, *g.seed, trials, g.threads};
                sidon::TrialStats st;
                if (code.finite) {
                    auto table = sidon::build_syndrome_table(*code.finite, rp, rm);
                    st = sidon::run_simulation(*code.finite, table, cfg);
                } else {
                    auto table = sidon::build_syndrome_table(code.lattice, rp, rm);
                    st = sidon::run_simulation(code.lattice, table, cfg);
                }
                Outcome o;
                o.payload = sidon::io::to_json(st, cfg);
                Table t({"trials", "corrected", "detected", "miscorrected"});
                t.add({std::to_string(st.trials), std::to_string(st.corrected), std::to_string(st.detected),
                       std::to_string(st.miscorrected)});
                o.text = "mode " + mode + ", r+ = " + std::to_string(rp) + ", r- = " + std::to_string(rm) + ", seed " +
                         std::to_string(*g.seed) + "\n" + t.str();
                return o;
            };
        });
    }

    // bounds
    std::optional<std::int64_t> bh_h, bh_k, bh_v;
    {
        auto* b = app.add_subcommand("bounds", "Lower bounds on phi(h,k) and upper bounds on f_h(v), h_k(v)");
        b->add_option("--h", bh_h, "Order h");
        b->add_option("--k", bh_k, "Set size k");
        b->add_option("--v", bh_v, "Group order v");
        b->callback([&] { run = [&] { return bounds_outcome(bh_h, bh_k, bh_v); }; });
    }

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Conjecture experiments");
    experiment->require_subcommand(1);
    std::int64_t n_max = 9, q_max = 9;
    {
        auto* ppc = experiment->add_subcommand("ppc", "Planar difference sets for n = 1..n_max");
        ppc->add_option("--n-max", n_max, "Largest order (default 9)");
        ppc->callback([&] {
            run = [&] {
                auto table = sidon::experiment_ppc(n_max, g.search());
                Outcome o;
                o.payload = sidon::io::to_json(table);
                Table t({"n", "prime power", "exists", "exhaustive", "nodes", "set"});
                bool budget_hit = false;
                for (const auto& row : table.rows) {
                    budget_hit |= !row.exhaustive;
                    t.add({std::to_string(row.n), yes_no(row.prime_power),
                           row.found ? "yes" : (row.exhaustive ? "no" : "?"), yes_no(row.exhaustive),
                           std::to_string(row.nodes), row.found ? "{" + join(row.set) + "}" : "-"});
                }
                o.text = t.str() + (table.consistent() ? "consistent with the prime power conjecture\n"
                                                       : "CONTRADICTS the prime power conjecture\n");
                if (!table.consistent()) o.exit = kVerifyFail;
                else if (budget_hit) o.exit = kBudget;
                return o;
            };
        });
        auto* cyc = experiment->add_subcommand("cyclicity", "Quotient cyclicity vs. full-period directions");
        cyc->add_option("--q-max", q_max, "Largest Singer order included (default 9)");
        cyc->callback([&] {
            run = [&] {
                Outcome o;
                std::vector<sidon::CyclicityRow> rows;
                try {
                    rows = sidon::experiment_cyclicity(cyclicity_corpus(q_max));
                } catch (const std::logic_error& e) {
                    o.payload = {{"type", "cyclicity-report"}, {"disagreement", e.what()}};
                    o.text = std::string("disagreement: ") + e.what() + "\n";
                    o.exit = kVerifyFail;
                    return o;
                }
                o.payload = sidon::io::to_json(rows);
                Table t({"code", "n", "det", "1-perfect", "quotient", "cyclic", "max period", "full period"});
                for (const auto& row : rows)
                    t.add({row.label, std::to_string(row.n), row.det.str(), yes_no(row.in_scope),
                           "[" + join(row.quotient_factors) + "]", yes_no(row.cyclic), std::to_string(row.max_period),
                           yes_no(row.full_period)});
                o.text = t.str();
                return o;
            };
        });
    }

    // shape
    auto* shape = app.add_subcommand("shape", "The error shape S_n(r+, r-)");
    shape->require_subcommand(1);
    {
        auto* size = shape->add_subcommand("size", "Number of points");
        auto* points = shape->add_subcommand("points", "List the points (capped by --limit)");
        for (auto* s : {size, points}) {
            s->add_option("--n", n, "Dimension")->required()->check(CLI::PositiveNumber);
            s->add_option("--rplus", rp, "r+")->required()->check(CLI::NonNegativeNumber);
            s->add_option("--rminus", rm, "r-")->required()->check(CLI::NonNegativeNumber);
        }
        size->callback([&] {
            run = [&] {
                const sidon::Shape s(n, rp, rm);
                const sidon::BigInt count = sidon::shape_size(s);
                Outcome o;
                o.payload = {{"type", "shape-size"}, {"n", n}, {"r_plus", rp}, {"r_minus", rm},
                             {"size", sidon::io::big_to_json(count)}};
                o.text = kv({{"shape", "S_" + std::to_string(n) + "(" + std::to_string(rp) + "," + std::to_string(rm) + ")"},
                             {"size", count.str()}});
                return o;
            };
        });
        points->callback([&] {
            run = [&] {
                const sidon::Shape s(n, rp, rm);
                const auto all = sidon::shape_points(s);
                const std::size_t cap = g.limit < 0 ? all.size() : std::min<std::size_t>(all.size(), static_cast<std::size_t>(g.limit));
                Outcome o;
                json pts = json::array();
                std::ostringstream os;
                for (std::size_t i = 0; i < cap; ++i) {
                    pts.push_back(all[i]);
                    os << "(" << join(all[i]) << ")\n";
                }
                o.payload = {{"type", "shape-points"}, {"n", n}, {"r_plus", rp}, {"r_minus", rm},
                             {"total", all.size()}, {"points", std::move(pts)}, {"truncated", cap < all.size()}};
                if (cap < all.size()) os << "... " << all.size() - cap << " more\n";
                o.text = os.str();
                return o;
            };
        });
    }

    auto emit_error = [&](const std::string& code, const std::string& message, double ms) {
        if (g.json_out) {
            json doc = {{"schema", sidon::io::kSchema},
                        {"status", "error"},
                        {"payload", nullptr},
                        {"timing_ms", static_cast<std::int64_t>(ms)},
                        {"error", {{"code", code}, {"message", message}}}};
            std::cout << doc.dump(2) << '\n';
        } else {
            std::cerr << "error [" << code << "]: " << message << '\n';
        }
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("Usage", e.what(), 0);
        if (!g.json_out) std::cerr << "run with --help for usage\n";
        return kUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };
    try {
        Outcome o = run();
        if (g.json_out) {
            json doc = {{"schema", sidon::io::kSchema},
                        {"status", o.status},
                        {"payload", std::move(o.payload)},
                        {"timing_ms", static_cast<std::int64_t>(elapsed())}};
            std::cout << doc.dump(2) << '\n';
        } else {
            std::cout << o.text;
        }
        return o.exit;
    } catch (const sidon::Error& e) {
        emit_error(std::string(sidon::error_code_name(e.code())), e.what(), elapsed());
        return e.code() == sidon::ErrorCode::BudgetExceeded ? kBudget : kUsage;
    } catch (const std::exception& e) {
        emit_error("Internal", e.what(), elapsed());
        return kUsage;
    }
}
