#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dormant/dormant.hpp"
#include "dormant/module_io.hpp"

namespace {

using dormant::ordered_json;

unsigned env_threads() {
    const char* s = std::getenv("DORMANT_THREADS");
    if (!s) return 1;
    long v = std::strtol(s, nullptr, 10);
    if (v < 1) return 1;
    if (v > 64) return 64;
    return static_cast<unsigned>(v);
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int math_fail(const dormant::math_error& e) {
    ordered_json j;
    j["error"] = e.code();
    j["detail"] = e.what();
    emit(j);
    return 1;
}

ordered_json witness_json(const dormant::cover_witness& w) {
    ordered_json j;
    j["sigma0"] = w.sigma0;
    j["sigma1"] = w.sigma1;
    j["sigmainf"] = w.sigmainf;
    j["order"] = w.order;
    j["degree"] = w.degree;
    return j;
}

ordered_json row_json(const dormant::oper_row& row) {
    ordered_json j;
    j["triple"] = row.triple;
    j["degree"] = row.degree;
    j["status"] = dormant::witness_status(row.witness.has_value());
    j["witness"] = row.witness ? witness_json(*row.witness) : ordered_json(nullptr);
    j["radii"] = row.radii;
    j["variants_consistent"] = row.variants_consistent;
    return j;
}

int run_validate(const std::string& path) {
    dormant::diffmodule M = dormant::module_from_json(dormant::load_json_file(path), false);
    auto viol = M.validate_report();
    ordered_json j;
    if (viol.empty()) {
        j["status"] = "pass";
    } else {
        j["status"] = "fail";
        ordered_json arr = ordered_json::array();
        for (const auto& [jj, jp, i] : viol) arr.push_back({jj, jp, i});
        j["violations"] = arr;
    }
    emit(j);
    return 0;
}

int run_cyclic(const std::string& path) {
    dormant::diffmodule M = dormant::module_from_json(dormant::load_json_file(path));
    ordered_json j;
    if (M.log) {
        j["cyclic_by_exponent"] = dormant::is_cyclic_by_exponent(M);
        j["exponent"] = dormant::exponent(M);
    } else {
        dormant::rvector v = dormant::find_cyclic(M);
        j["cyclic_vector"] = dormant::vector_to_json(v);
    }
    emit(j);
    return 0;
}

int run_exponent(const std::string& path) {
    dormant::diffmodule M = dormant::module_from_json(dormant::load_json_file(path));
    ordered_json j;
    j["exponent"] = dormant::exponent(M);
    emit(j);
    return 0;
}

int run_residue(const std::string& path) {
    dormant::diffmodule M = dormant::module_from_json(dormant::load_json_file(path));
    ordered_json j;
    j["length"] = dormant::residue_length(M);
    j["graded"] = dormant::residue_graded_lengths(M);
    emit(j);
    return 0;
}

int run_dualize(const std::string& path) {
    dormant::pinned_module P = dormant::pinned_from_json(dormant::load_json_file(path));
    dormant::pinned_dual d = dormant::dualize_pinned(P.M, P.v);
    emit(dormant::pinned_to_json({d.M, d.v}));
    return 0;
}

int run_descend(const std::string& path, bool full) {
    dormant::diffmodule M = dormant::module_from_json(dormant::load_json_file(path));
    ordered_json j;
    if (full) {
        auto [rank, C] = dormant::descend_full(M);
        j["rank"] = rank;
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < C.rows; ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < C.cols; ++c)
                row.push_back(dormant::to_string(C.at(r, c)));
            rows.push_back(row);
        }
        j["basis"] = rows;
    } else {
        auto [low, C] = dormant::descend_once(M);
        j["rank"] = C.cols;
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < C.rows; ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < C.cols; ++c)
                row.push_back(dormant::to_string(C.at(r, c)));
            rows.push_back(row);
        }
        j["basis"] = rows;
        j["module"] = low ? dormant::module_to_json(*low) : ordered_json(nullptr);
    }
    emit(j);
    return 0;
}

int run_opers(unsigned long p, unsigned N, unsigned long long budget,
              const std::string& json_out) {
    std::vector<dormant::oper_row> rows =
        dormant::enumerate_opers(p, N, budget, env_threads());
    ordered_json j;
    j["p"] = p;
    j["N"] = N;
    j["budget"] = budget;
    ordered_json arr = ordered_json::array();
    for (const dormant::oper_row& row : rows) arr.push_back(row_json(row));
    j["rows"] = arr;
    emit(j);
    if (!json_out.empty()) {
        std::ofstream f(json_out);
        f << j.dump(2) << "\n";
    }
    return 0;
}

int run_cover_check(unsigned long l0, unsigned long l1, unsigned long li, unsigned long p,
                    unsigned N, unsigned long long budget) {
    dormant::ram_triple t{l0, l1, li};
    auto [w, nodes] = dormant::realizable(t, p, N, budget);
    (void)nodes;
    ordered_json j;
    j["triple"] = t;
    j["degree"] = dormant::cover_degree(t);
    j["status"] = dormant::witness_status(w.has_value());
    j["witness"] = w ? witness_json(*w) : ordered_json(nullptr);
    j["radii"] = dormant::radii_of_triple(t, p, N);
    emit(j);
    return 0;
}

int run_selftest(const std::string& grid) {
    dormant::selftest::suite_config cfg;
    cfg.small = (grid == "small");
    cfg.threads = env_threads();
    std::vector<dormant::selftest::criterion_result> rs = dormant::selftest::run_all(cfg);
    ordered_json j;
    ordered_json arr = ordered_json::array();
    bool all = true;
    for (const auto& r : rs) {
        ordered_json row;
        row["criterion"] = r.id;
        row["pass"] = r.pass;
        row["detail"] = r.detail;
        arr.push_back(row);
        if (!r.pass) all = false;
    }
    j["grid"] = cfg.small ? "small" : "full";
    j["results"] = arr;
    j["all_pass"] = all;
    emit(j);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact level-m differential modules over F_p(t) and tame covering search"};
    app.require_subcommand(1);

    std::string file;
    bool full = false;
    unsigned long p = 3;
    unsigned N = 1;
    unsigned m = 0;
    unsigned long long budget = 100000000ULL;
    std::string json_out;
    std::string grid = "full";
    unsigned long l0 = 1, l1 = 1, li = 1;
    (void)m;

    CLI::App* c_validate = app.add_subcommand("validate", "check the operator relations");
    c_validate->add_option("file", file, "module JSON file")->required();

    CLI::App* c_cyclic = app.add_subcommand("cyclic", "find or test a cyclic vector");
    c_cyclic->add_option("file", file, "module JSON file")->required();

    CLI::App* c_exponent = app.add_subcommand("exponent", "exponent of a log module");
    c_exponent->add_option("file", file, "module JSON file")->required();

    CLI::App* c_residue = app.add_subcommand("residue", "residue length and graded pieces");
    c_residue->add_option("file", file, "module JSON file")->required();

    CLI::App* c_dualize = app.add_subcommand("dualize", "dual of a pinned module");
    c_dualize->add_option("file", file, "pinned module JSON file")->required();

    CLI::App* c_descend = app.add_subcommand("descend", "horizontal sections one level down");
    c_descend->add_option("file", file, "module JSON file")->required();
    c_descend->add_flag("--full", full, "iterate down to level 0");

    CLI::App* c_opers = app.add_subcommand("opers", "enumerate branch triples with witnesses");
    c_opers->add_option("--p", p, "odd prime")->required();
    c_opers->add_option("--N", N, "level exponent, modulus p^N")->required();
    c_opers->add_option("--budget", budget, "search node budget per triple");
    c_opers->add_option("--json", json_out, "also write the table to this file");

    CLI::App* c_cover = app.add_subcommand("cover-check", "realizability of one branch triple");
    c_cover->add_option("l0", l0, "branch index over 0")->required();
    c_cover->add_option("l1", l1, "branch index over 1")->required();
    c_cover->add_option("linf", li, "branch index over infinity")->required();
    c_cover->add_option("--p", p, "odd prime")->required();
    c_cover->add_option("--N", N, "level exponent, modulus p^N")->required();
    c_cover->add_option("--budget", budget, "search node budget");

    CLI::App* c_selftest = app.add_subcommand("selftest", "run the acceptance suite");
    c_selftest->add_option("--grid", grid, "full or small")
        ->check(CLI::IsMember({"full", "small"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_validate->parsed()) return run_validate(file);
        if (c_cyclic->parsed()) return run_cyclic(file);
        if (c_exponent->parsed()) return run_exponent(file);
        if (c_residue->parsed()) return run_residue(file);
        if (c_dualize->parsed()) return run_dualize(file);
        if (c_descend->parsed()) return run_descend(file, full);
        if (c_opers->parsed()) return run_opers(p, N, budget, json_out);
        if (c_cover->parsed()) return run_cover_check(l0, l1, li, p, N, budget);
        if (c_selftest->parsed()) return run_selftest(grid);
    } catch (const dormant::math_error& e) {
        return math_fail(e);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
