#include "nsvoa/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "nsvoa/cache.hpp"
#include "nsvoa/coset.hpp"
#include "nsvoa/json_io.hpp"
#include "nsvoa/oddvar.hpp"

namespace nsvoa {

namespace {

struct SessionConfig {
    int m = 1;
    std::string level;
    int charge = 0;
    std::string label = "1/2,1/2";
    std::string labels;
    std::string cutoff = "4";
    int window = 3;
    std::string convention = "standard";
    std::string format = "json";
    std::string cache_dir;
    bool radical = false;
};

/// Result of one command: the JSON document and whether every verification passed.
struct Outcome {
    Json doc;
    bool verified = true;
};

std::pair<Half, Half> parse_pair(std::string text) {
    if (!text.empty() && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("label '" + text + "' is not of the form j,k");
    return {Half::parse(text.substr(0, comma)), Half::parse(text.substr(comma + 1))};
}

MinimalLabel label_of(const SessionConfig& cfg, const std::string& text) {
    const auto [j, k] = parse_pair(text);
    return make_label(cfg.m, j, k, parse_convention(cfg.convention));
}

Half required_half(const std::string& text, const char* flag) {
    if (text.empty()) throw std::invalid_argument(std::string("missing ") + flag);
    return Half::parse(text);
}

Half cutoff_of(const SessionConfig& cfg) {
    const Half c = Half::parse(cfg.cutoff);
    if (c < Half(0)) throw std::invalid_argument("--cutoff must be nonnegative");
    return c;
}

Json relations_json(const std::vector<IdentityReport>& rels) {
    Json out = Json::object();
    for (const auto& r : rels) out[r.name] = to_json(r);
    return out;
}

Outcome cmd_spectrum(const SessionConfig& cfg) {
    const Convention conv = parse_convention(cfg.convention);
    Json labels = Json::array();
    for (const auto& l : spectrum(cfg.m, conv)) {
        Json j = to_json(l);
        j["chirality"] = chirality_name(classify_chirality(l));
        labels.push_back(j);
    }
    return {Json{{"command", "spectrum"}, {"m", cfg.m}, {"convention", convention_name(conv)},
                 {"count", labels.size()}, {"labels", labels}}};
}

Outcome cmd_gram(const SessionConfig& cfg) {
    const MinimalLabel l = label_of(cfg, cfg.label);
    const Half level = required_half(cfg.level, "--level");
    Ns2Module mod(l.params(), ModuleKind::irreducible);
    const Mat& g = mod.gram(level, cfg.charge);
    Json basis = Json::array();
    for (const auto& mono : mod.verma_basis(level, cfg.charge)) basis.push_back(monomial_str(mono));
    Json rows = Json::array();
    for (const auto& row : g) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        rows.push_back(r);
    }
    return {Json{{"command", "gram"}, {"label", to_json(l)}, {"level", to_json(level)}, {"charge", cfg.charge},
                 {"basis", basis}, {"rank", rank(g)}, {"matrix", rows}}};
}

Outcome cmd_singular(const SessionConfig& cfg) {
    const MinimalLabel l = label_of(cfg, cfg.label);
    const Half level = required_half(cfg.level, "--level");
    Ns2Module mod(l.params(), ModuleKind::verma);
    const auto vecs = cfg.radical ? mod.radical_basis(level, cfg.charge) : mod.singular_vectors(level, cfg.charge);
    Json list = Json::array();
    for (const auto& v : vecs) list.push_back(to_json(v));
    return {Json{{"command", "singular"}, {"label", to_json(l)}, {"level", to_json(level)}, {"charge", cfg.charge},
                 {"kind", cfg.radical ? "radical" : "singular"}, {"count", list.size()}, {"vectors", list}}};
}

Outcome cmd_character(const SessionConfig& cfg) {
    const MinimalLabel l = label_of(cfg, cfg.label);
    Ns2Module mod(l.params(), ModuleKind::irreducible);
    return {Json{{"command", "character"}, {"label", to_json(l)}, {"character", to_json(mod.character(cutoff_of(cfg)))}}};
}

Outcome cmd_fusion_bound(const SessionConfig& cfg) {
    std::vector<MinimalLabel> ls;
    std::stringstream ss(cfg.labels);
    std::string part;
    while (std::getline(ss, part, ';')) ls.push_back(label_of(cfg, part));
    if (ls.size() != 3) throw std::invalid_argument("--labels needs three labels separated by ';'");
    Json labels = Json::array();
    for (const auto& l : ls) labels.push_back(to_json(l));
    return {Json{{"command", "fusion-bound"}, {"labels", labels}, {"bound", fusion_upper_bound(ls[0], ls[1], ls[2])},
                 {"leading_exponent", to_json(leading_exponent(ls[0], ls[1], ls[2]))}}};
}

Outcome cmd_chirality(const SessionConfig& cfg) {
    const MinimalLabel l = label_of(cfg, cfg.label);
    return {Json{{"command", "chirality"}, {"label", to_json(l)}, {"chirality", chirality_name(classify_chirality(l))}}};
}

Outcome cmd_coset_verify(const SessionConfig& cfg) {
    CosetAKS coset(label_of(cfg, cfg.label));
    const Half cutoff = cutoff_of(cfg);
    const CosetReport affine = verify_affine_relations(coset, cutoff, cfg.window);
    const CosetReport rho = verify_rho_and_virasoro(coset, cutoff, cfg.window);
    std::vector<IdentityReport> rels = affine.relations;
    rels.insert(rels.end(), rho.relations.begin(), rho.relations.end());
    Json doc{{"command", "coset verify"}, {"label", to_json(coset.label())}, {"cutoff", to_json(cutoff)},
             {"window", cfg.window}};
    doc["level"] = affine.level_found ? to_json(affine.level) : Json();
    doc["sugawara_c"] = to_json(rho.sugawara_c);
    doc["omega_residual"] = rho.residual;
    doc["relations"] = relations_json(rels);
    return {doc, affine.ok() && rho.ok()};
}

Outcome cmd_coset_decompose(const SessionConfig& cfg) {
    CosetAKS coset(label_of(cfg, cfg.label));
    const Half cutoff = cutoff_of(cfg);
    const Decomposition d = find_affine_hw(coset, cutoff, cfg.window);
    Json hws = Json::array();
    for (const auto& h : d.highest_weights)
        hws.push_back(Json{{"k", h.k}, {"s", to_json(h.s)}, {"weight", to_json(h.weight)}, {"charge", to_json(h.charge)},
                           {"sector", h.grade.sector}, {"relative_charge", h.grade.charge},
                           {"level", to_json(h.grade.level)}, {"vector", tensor_str(h.vector)}});
    Json doc{{"command", "coset decompose"}, {"label", to_json(coset.label())}, {"cutoff", to_json(cutoff)},
             {"window", cfg.window}, {"highest_weights", hws},
             {"relations", relations_json({d.k_range, d.completeness})},
             {"certified_grades", d.certified_grades}, {"skipped_grades", d.skipped_grades}};
    return {doc, d.ok()};
}

Outcome cmd_oddvar_check(const SessionConfig& cfg) {
    const Half cutoff = cutoff_of(cfg);
    const MinimalLabel vac = make_label(cfg.m, half_odd(1), half_odd(1));
    VacuumVOA voa(vac.c(), cutoff);
    const Half max_weight = cutoff - half_odd(3);
    const OddReport rep = check_odd_vertex_operators(voa, max_weight);
    return {Json{{"command", "oddvar check"}, {"c", to_json(vac.c())}, {"cutoff", to_json(cutoff)},
                 {"max_weight", to_json(max_weight)}, {"relations", relations_json(rep.relations)}},
            rep.ok()};
}

std::string csv_field(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_object() && j.contains("value")) return j.at("value").get<std::string>();
    return j.dump();
}

std::string to_csv(const std::string& command, const Json& doc) {
    std::ostringstream out;
    auto row = [&](std::initializer_list<std::string> fields) {
        bool first = true;
        for (const auto& f : fields) {
            if (!first) out << ',';
            out << csv_field(f);
            first = false;
        }
        out << '\n';
    };
    if (command == "spectrum") {
        row({"j", "k", "h", "q", "c", "chirality"});
        for (const auto& l : doc["labels"])
            row({text(l["j"]), text(l["k"]), text(l["h"]), text(l["q"]), text(l["c"]), text(l["chirality"])});
    } else if (command == "gram") {
        row({"row", "col", "entry"});
        for (std::size_t i = 0; i < doc["matrix"].size(); ++i)
            for (std::size_t k = 0; k < doc["matrix"][i].size(); ++k)
                row({std::to_string(i), std::to_string(k), text(doc["matrix"][i][k])});
    } else if (command == "singular") {
        row({"vector", "monomial", "coefficient"});
        for (std::size_t i = 0; i < doc["vectors"].size(); ++i)
            for (const auto& t : doc["vectors"][i]) row({std::to_string(i), text(t["monomial"]), text(t["coefficient"])});
    } else if (command == "character") {
        row({"level", "charge", "dim"});
        for (const auto& t : doc["character"]["terms"]) row({text(t["level"]), text(t["charge"]), text(t["dim"])});
    } else if (command == "fusion-bound") {
        row({"bound", "leading_exponent"});
        row({text(doc["bound"]), text(doc["leading_exponent"])});
    } else if (command == "chirality") {
        row({"j", "k", "chirality"});
        row({text(doc["label"]["j"]), text(doc["label"]["k"]), text(doc["chirality"])});
    } else if (command == "coset decompose") {
        row({"k", "s", "weight", "charge", "sector", "relative_charge", "level"});
        for (const auto& h : doc["highest_weights"])
            row({text(h["k"]), text(h["s"]), text(h["weight"]), text(h["charge"]), text(h["sector"]),
                 text(h["relative_charge"]), text(h["level"])});
    } else {
        row({"relation", "checked", "failure_count"});
        for (const auto& [name, r] : doc["relations"].items())
            row({name, text(r["checked"]), text(r["failure_count"])});
    }
    return out.str();
}

std::string cache_key(const std::string& command, const SessionConfig& cfg) {
    std::ostringstream k;
    k << "command=" << command << ";m=" << cfg.m << ";level=" << cfg.level << ";charge=" << cfg.charge
      << ";label=" << cfg.label << ";labels=" << cfg.labels << ";cutoff=" << cfg.cutoff << ";window=" << cfg.window
      << ";convention=" << cfg.convention << ";format=" << cfg.format << ";radical=" << cfg.radical;
    return k.str();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    SessionConfig cfg;
    CLI::App app{"Exact computations for the N=2 Neveu-Schwarz superconformal algebra", "nsvoa"};
    app.require_subcommand(1);

    std::string chosen;
    std::map<std::string, std::function<Outcome(const SessionConfig&)>> handlers;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--m", cfg.m, "level m >= 1");
        sub->add_option("--level", cfg.level, "grade level (half-integer)");
        sub->add_option("--charge", cfg.charge, "relative U(1) charge");
        sub->add_option("--label", cfg.label, "minimal-model label j,k");
        sub->add_option("--cutoff", cfg.cutoff, "weight cutoff (half-integer)");
        sub->add_option("--window", cfg.window, "lattice window |p| <= P");
        sub->add_option("--convention", cfg.convention, "standard or paper-strict");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--cache-dir", cfg.cache_dir, "result cache directory (or NSVOA_CACHE_DIR)");
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& full, const std::string& help,
                    std::function<Outcome(const SessionConfig&)> fn) {
        CLI::App* sub = parent->add_subcommand(name, help);
        add_common(sub);
        sub->callback([&chosen, full] { chosen = full; });
        handlers[full] = std::move(fn);
        return sub;
    };
    leaf(&app, "spectrum", "spectrum", "unitary minimal-model labels", cmd_spectrum);
    leaf(&app, "gram", "gram", "Shapovalov matrix of one grade", cmd_gram);
    leaf(&app, "singular", "singular", "singular vectors of one Verma grade", cmd_singular)
        ->add_flag("--radical", cfg.radical, "report the Gram kernel instead");
    leaf(&app, "character", "character", "truncated character of the irreducible module", cmd_character);
    leaf(&app, "fusion-bound", "fusion-bound", "fusion-rule upper bound for three labels", cmd_fusion_bound)
        ->add_option("--labels", cfg.labels, "\"(j,k);(j,k);(j,k)\"");
    leaf(&app, "chirality", "chirality", "chiral / anti-chiral classification", cmd_chirality);
    CLI::App* coset = app.add_subcommand("coset", "affine sl2 inside N=2 (x) lattice");
    coset->require_subcommand(1);
    leaf(coset, "verify", "coset verify", "affine, rho and Virasoro relations", cmd_coset_verify);
    leaf(coset, "decompose", "coset decompose", "affine highest-weight vectors", cmd_coset_decompose);
    CLI::App* odd = app.add_subcommand("oddvar", "vertex operators with odd variables");
    odd->require_subcommand(1);
    leaf(odd, "check", "oddvar check", "odd-variable identities on the vacuum algebra", cmd_oddvar_check);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitInvalid;
    }

    if (cfg.cache_dir.empty())
        if (const char* env = std::getenv("NSVOA_CACHE_DIR")) cfg.cache_dir = env;
    ResultCache cache(cfg.cache_dir, err);
    const std::string key = cache_key(chosen, cfg);
    if (auto hit = cache.load(key)) {
        err << "cache: hit " << cache.path_for(key).filename().string() << "\n";
        out << hit->payload;
        return hit->exit_code;
    }

    Outcome result;
    try {
        if (cfg.m < 1) throw std::invalid_argument("--m must be at least 1");
        if (cfg.window < 0) throw std::invalid_argument("--window must be nonnegative");
        result = handlers.at(chosen)(cfg);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    const std::string payload = cfg.format == "csv" ? to_csv(chosen, result.doc) : result.doc.dump(2) + "\n";
    const int code = result.verified ? kExitOk : kExitVerification;
    cache.store(key, {code, payload});
    out << payload;
    return code;
}

}  // namespace nsvoa
