// Command-line front end: one verb per decision procedure or gadget
// generator, text formats throughout.
//
// Exit codes: 0 = yes (witness printed), 1 = no, 2 = usage or parse error,
// 3 = resource cap exceeded.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flpat/io.hpp"
#include "flpat/matcher.hpp"
#include "flpat/pda.hpp"
#include "flpat/reductions.hpp"

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

void print_morphism(const flpat::Morphism& h) {
    for (const auto& [var, image] : h) {
        std::cout << var << " =";
        for (const flpat::Symbol& s : image) std::cout << ' ' << s;
        std::cout << "\n";
    }
}

void print_word(const flpat::Word& w) {
    std::cout << "word =";
    for (const flpat::Symbol& s : w) std::cout << ' ' << s;
    std::cout << "\n";
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir.back() == '/') return dir + name;
    return dir + "/" + name;
}

struct Options {
    std::string pattern_file, word_file, cfg_file, input_file, out_dir;
    std::vector<std::string> nfa_files, pda_files;
    std::size_t k = 2;
    std::size_t min_len = 1;
    flpat::SearchLimits limits;
};

flpat::Pattern load_pattern(const Options& o) {
    if (o.pattern_file.empty()) throw std::invalid_argument("--pattern is required");
    return flpat::parse_pattern(flpat::read_file(o.pattern_file));
}

flpat::Word load_word(const Options& o) {
    if (o.word_file.empty()) throw std::invalid_argument("--word is required");
    return flpat::parse_word(flpat::read_file(o.word_file));
}

flpat::Nfa load_nfa(const Options& o) {
    if (o.nfa_files.size() != 1)
        throw std::invalid_argument("exactly one --nfa is required");
    return flpat::parse_nfa(flpat::read_file(o.nfa_files[0]));
}

flpat::Cfg load_cfg(const Options& o) {
    if (o.cfg_file.empty()) throw std::invalid_argument("--cfg is required");
    return flpat::parse_cfg(flpat::read_file(o.cfg_file));
}

std::string out_dir_of(const Options& o) {
    if (o.out_dir.empty()) throw std::invalid_argument("--out is required");
    return o.out_dir;
}

int cmd_match(const Options& o) {
    auto h = flpat::match_exact(load_pattern(o), load_word(o));
    if (!h) return kNo;
    print_morphism(*h);
    return kYes;
}

int cmd_match_factor(const Options& o) {
    auto wit = flpat::match_factor(load_pattern(o), load_word(o));
    if (!wit) return kNo;
    print_morphism(wit->morphism);
    std::cout << "start = " << wit->start << "\n";
    std::cout << "length = " << wit->length << "\n";
    return kYes;
}

int cmd_nfa_pattern(const Options& o) {
    auto res = flpat::nfa_pattern_accept(load_nfa(o), load_pattern(o), o.limits);
    if (!res) return kNo;
    print_word(res->first);
    print_morphism(res->second);
    return kYes;
}

int cmd_nfa_pattern_factor(const Options& o) {
    auto res = flpat::nfa_pattern_factor_accept(load_nfa(o), load_pattern(o), o.limits);
    if (!res) return kNo;
    print_word(res->first);
    print_morphism(res->second.morphism);
    std::cout << "start = " << res->second.start << "\n";
    std::cout << "length = " << res->second.length << "\n";
    return kYes;
}

int cmd_cfg_square(const Options& o) {
    auto w = flpat::cfg_square_search(load_cfg(o), o.limits);
    if (!w) return kNo;
    print_word(*w);
    return kYes;
}

int cmd_cfg_pattern_factor(const Options& o) {
    auto res = flpat::cfg_pattern_factor_search(load_cfg(o), load_pattern(o), o.limits);
    if (!res) return kNo;
    print_word(res->word);
    print_morphism(res->morphism);
    std::cout << "start = " << res->position << "\n";
    std::cout << "length = " << flpat::apply_morphism(res->morphism, load_pattern(o)).size()
              << "\n";
    return kYes;
}

int cmd_intersect_dfa(const Options& o) {
    if (o.nfa_files.size() < 2)
        throw std::invalid_argument("intersect-dfa wants at least two --nfa files");
    std::vector<flpat::Dfa> machines;
    for (const std::string& f : o.nfa_files)
        machines.push_back(flpat::parse_dfa(flpat::read_file(f)));
    auto w = flpat::shortest_common_word(machines, o.limits);
    if (!w) return kNo;
    print_word(*w);
    return kYes;
}

int cmd_intersect_pda(const Options& o) {
    if (o.pda_files.size() < 2)
        throw std::invalid_argument("intersect-pda wants at least two --pda files");
    std::vector<flpat::Pda> machines;
    for (const std::string& f : o.pda_files)
        machines.push_back(flpat::parse_pda(flpat::read_file(f)));
    auto w = flpat::pda_intersection_nonempty(machines, o.limits);
    if (!w) return kNo;
    print_word(*w);
    return kYes;
}

flpat::SatInstance load_sat(const Options& o) {
    if (o.input_file.empty())
        throw std::invalid_argument("an input file argument is required");
    return flpat::parse_dimacs(flpat::read_file(o.input_file));
}

int cmd_reduce_sat_dfa(const Options& o) {
    auto dfas = flpat::sat_to_clause_dfas(load_sat(o));
    std::string dir = out_dir_of(o);
    for (std::size_t i = 0; i < dfas.size(); ++i)
        flpat::write_file(join_path(dir, "clause" + std::to_string(i + 1) + ".dfa"),
                          flpat::write_dfa(dfas[i]));
    std::cout << "wrote " << dfas.size() << " clause machines\n";
    return kYes;
}

int cmd_reduce_sat_kpower(const Options& o) {
    auto dfas = flpat::sat_to_clause_dfas(load_sat(o));
    auto [machine, pattern] = flpat::dfas_to_kpower_instance(dfas);
    std::string dir = out_dir_of(o);
    for (std::size_t i = 0; i < dfas.size(); ++i)
        flpat::write_file(join_path(dir, "clause" + std::to_string(i + 1) + ".dfa"),
                          flpat::write_dfa(dfas[i]));
    flpat::write_file(join_path(dir, "machine.dfa"), flpat::write_dfa(machine));
    flpat::write_file(join_path(dir, "pattern.txt"), flpat::write_pattern(pattern));
    std::cout << "wrote machine.dfa and pattern.txt\n";
    return kYes;
}

int cmd_reduce_sat_angluin(const Options& o) {
    auto [pattern, word, machine] = flpat::sat_to_angluin_gadget(load_sat(o));
    std::string dir = out_dir_of(o);
    flpat::write_file(join_path(dir, "pattern.txt"), flpat::write_pattern(pattern));
    flpat::write_file(join_path(dir, "word.txt"), flpat::write_word(word));
    flpat::write_file(join_path(dir, "machine.dfa"), flpat::write_dfa(machine));
    std::cout << "wrote pattern.txt, word.txt, machine.dfa\n";
    return kYes;
}

int cmd_reduce_pcp_square(const Options& o) {
    if (o.input_file.empty())
        throw std::invalid_argument("an input file argument is required");
    auto inst = flpat::parse_pcp(flpat::read_file(o.input_file));
    flpat::Cfg g = flpat::pcp_to_square_cfg(inst);
    std::string dir = out_dir_of(o);
    flpat::write_file(join_path(dir, "grammar.cfg"), flpat::write_cfg(g));
    std::cout << "wrote grammar.cfg\n";
    return kYes;
}

int cmd_reduce_dfa_kpower_factor(const Options& o) {
    if (o.nfa_files.size() < 2)
        throw std::invalid_argument(
            "reduce-dfa-kpower-factor wants at least two --nfa files");
    std::vector<flpat::Dfa> machines;
    for (const std::string& f : o.nfa_files)
        machines.push_back(flpat::parse_dfa(flpat::read_file(f)));
    auto [grammar, pattern] = flpat::dfas_to_kpower_factor_cfg(machines);
    std::string dir = out_dir_of(o);
    flpat::write_file(join_path(dir, "grammar.cfg"), flpat::write_cfg(grammar));
    flpat::write_file(join_path(dir, "pattern.txt"), flpat::write_pattern(pattern));
    std::cout << "wrote grammar.cfg and pattern.txt\n";
    return kYes;
}

int cmd_gen_squarefree(const Options& o) {
    flpat::Word w = flpat::squarefree_word(o.min_len);
    flpat::Cfg slp = flpat::squarefree_slp_grammar(o.min_len);
    std::string dir = out_dir_of(o);
    flpat::write_file(join_path(dir, "word.txt"), flpat::write_word(w));
    flpat::write_file(join_path(dir, "slp.cfg"), flpat::write_cfg(slp));
    std::cout << "wrote word.txt and slp.cfg\n";
    return kYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pattern-occurrence decisions over finite regular and "
                 "context-free languages, plus hardness-gadget generators"};
    app.require_subcommand(1);

    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--pattern", o.pattern_file, "pattern file");
        sub->add_option("--word", o.word_file, "word file");
        sub->add_option("--nfa", o.nfa_files, "automaton file (repeatable)");
        sub->add_option("--cfg", o.cfg_file, "grammar file");
        sub->add_option("--pda", o.pda_files, "pushdown automaton file (repeatable)");
        sub->add_option("--out", o.out_dir, "output directory for generated bundles");
        sub->add_option("--k", o.k, "copy count for power gadgets");
        sub->add_option("--min-len", o.min_len, "minimum squarefree word length");
        sub->add_option("--max-configs", o.limits.max_configs,
                        "visited-configuration cap");
        sub->add_option("--max-len", o.limits.max_len, "constructed-word length cap");
        sub->add_option("input", o.input_file, "instance file (reduction verbs)");
        return sub;
    };

    struct Verb { const char* name; int (*run)(const Options&); };
    std::vector<std::pair<CLI::App*, int (*)(const Options&)>> verbs;
    for (const Verb& v : {
             Verb{"match", cmd_match},
             Verb{"match-factor", cmd_match_factor},
             Verb{"nfa-pattern", cmd_nfa_pattern},
             Verb{"nfa-pattern-factor", cmd_nfa_pattern_factor},
             Verb{"cfg-square", cmd_cfg_square},
             Verb{"cfg-pattern-factor", cmd_cfg_pattern_factor},
             Verb{"intersect-dfa", cmd_intersect_dfa},
             Verb{"intersect-pda", cmd_intersect_pda},
             Verb{"reduce-sat-dfa", cmd_reduce_sat_dfa},
             Verb{"reduce-sat-kpower", cmd_reduce_sat_kpower},
             Verb{"reduce-sat-angluin", cmd_reduce_sat_angluin},
             Verb{"reduce-pcp-square", cmd_reduce_pcp_square},
             Verb{"reduce-dfa-kpower-factor", cmd_reduce_dfa_kpower_factor},
             Verb{"gen-squarefree", cmd_gen_squarefree},
         })
        verbs.push_back({add_common(app.add_subcommand(v.name)), v.run});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        for (auto& [sub, run] : verbs)
            if (sub->parsed()) return run(o);
        return kUsage;
    } catch (const flpat::ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
