// qpc command line tool. Drives the C API only.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qpc.h"

namespace {

using nlohmann::json;

struct FormHandle {
    qpc_form* ptr = nullptr;
    ~FormHandle() { qpc_form_free(ptr); }
};

struct StringHandle {
    char* ptr = nullptr;
    ~StringHandle() { qpc_string_free(ptr); }
};

int fail(qpc_status st) {
    std::cerr << "error (" << qpc_status_name(st) << "): " << qpc_last_error() << "\n";
    return 1;
}

bool load_form(const std::string& path, FormHandle& handle) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        return false;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    qpc_status st = qpc_form_parse_json(buf.str().c_str(), &handle.ptr);
    if (st != QPC_OK) {
        fail(st);
        return false;
    }
    return true;
}

bool resolve_t(const FormHandle& form, bool tSet, int64_t& t) {
    if (tSet) return true;
    if (qpc_form_default_t(form.ptr, &t)) return true;
    std::cerr << "error: no -t given and the form file carries no \"t\"\n";
    return false;
}

void print_analyze(const json& j) {
    std::cout << "n = " << j["n"].get<int>() << ", rank = " << j["rank"].get<int>() << "\n";
    if (j.contains("off_rank")) std::cout << "off-diagonal rank = " << j["off_rank"].get<int>() << "\n";
    std::cout << "case: " << j["case"].get<std::string>() << "\n";
    if (j.contains("minor_rows"))
        std::cout << "good minor rows " << j["minor_rows"].dump() << " cols "
                  << j["minor_cols"].dump() << "\n";
    if (j.contains("b_ranks")) std::cout << "block ranks " << j["b_ranks"].dump() << "\n";
    if (j.contains("structure_verified"))
        std::cout << "structure verified: " << (j["structure_verified"].get<bool>() ? "yes" : "NO")
                  << "\n";
    if (j.contains("witness")) std::cout << "witness: " << j["witness"].dump() << "\n";
}

void print_local(const json& j) {
    std::cout << "p      chi_p        M  method\n";
    for (const auto& row : j["chi_table"]) {
        std::printf("%-6lld %-12.6g %-2d %s%s\n",
                    static_cast<long long>(row["p"].get<int64_t>()), row["chi"].get<double>(),
                    row["M_used"].get<int>(), row["method"].get<std::string>().c_str(),
                    row["stabilized"].get<bool>() ? "" : "  [not stabilized]");
    }
    std::cout << "obstructions: " << j["obstructions"].dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"circle-method toolkit for quadratic forms in prime variables"};
    app.require_subcommand(1);

    std::string formPath, csvPath, xStr, qStr;
    int64_t t = 0;
    bool tSet = false;
    int64_t pmax = 100;
    double tol = 1e-3;
    double X = 0;
    int64_t Xi = 0;
    std::vector<double> Xs;
    uint64_t samples = 1'000'000;
    uint64_t seed = 42;
    uint64_t lemmaSeed = 7;
    int threads = 0;
    double budget = 1e10;
    bool asJson = false;

    auto addT = [&](CLI::App* cmd) {
        cmd->add_option("-t", t, "target value t")->each([&](const std::string&) { tSet = true; });
    };

    auto* analyze = app.add_subcommand("analyze", "rank, off-diagonal rank, classification");
    analyze->add_option("form", formPath, "form JSON file")->required();
    analyze->add_flag("--json", asJson, "emit raw JSON");

    auto* local = app.add_subcommand("local", "per-prime local densities and obstructions");
    local->add_option("form", formPath)->required();
    addT(local);
    local->add_option("-P", pmax, "prime limit (default 100)");
    local->add_flag("--json", asJson);

    auto* series = app.add_subcommand("series", "truncated singular series with tail bound");
    series->add_option("form", formPath)->required();
    addT(series);
    series->add_option("--tol", tol, "stabilization tolerance (default 1e-3)");
    series->add_flag("--json", asJson);

    auto* integral = app.add_subcommand("integral", "singular integral estimate");
    integral->add_option("form", formPath)->required();
    addT(integral);
    integral->add_option("-X", X, "box size")->required();
    integral->add_option("--samples", samples, "Monte Carlo samples (default 1e6)");
    integral->add_option("--seed", seed, "RNG seed (default 42)");
    integral->add_flag("--json", asJson);

    auto* count = app.add_subcommand("count", "exact weighted count N_{f,t}(X)");
    count->add_option("form", formPath)->required();
    addT(count);
    count->add_option("-X", Xi, "box size")->required();
    count->add_option("--threads", threads, "worker threads (default: hardware)");
    count->add_option("--budget", budget, "work budget (default 1e10)");
    count->add_flag("--json", asJson);

    auto* predict = app.add_subcommand("predict", "main term, exact count, ratio");
    predict->add_option("form", formPath)->required();
    addT(predict);
    predict->add_option("-X", X, "box size")->required();
    predict->add_option("--tol", tol);
    predict->add_option("--samples", samples);
    predict->add_option("--seed", seed);
    predict->add_option("--threads", threads);
    predict->add_flag("--json", asJson);

    auto* cmp = app.add_subcommand("compare", "prediction table over several X");
    cmp->add_option("form", formPath)->required();
    addT(cmp);
    cmp->add_option("-X", Xs, "box sizes")->required()->delimiter(',');
    cmp->add_option("--csv", csvPath, "write CSV to this file");
    cmp->add_option("--tol", tol);
    cmp->add_option("--samples", samples);
    cmp->add_option("--seed", seed);
    cmp->add_option("--threads", threads);
    cmp->add_flag("--json", asJson);

    auto* arcs = app.add_subcommand("arcs", "major arc dissection table");
    arcs->add_option("-X", xStr, "X (decimal or a/b, exact)")->required();
    arcs->add_option("-Q", qStr, "Q (decimal or a/b, exact)")->required();
    arcs->add_flag("--json", asJson);

    auto* lemmas = app.add_subcommand("check-lemmas", "desk-scale property suite");
    lemmas->add_option("--seed", lemmaSeed, "RNG seed (default 7)");
    lemmas->add_flag("--json", asJson);

    CLI11_PARSE(app, argc, argv);

    StringHandle out;
    if (analyze->parsed()) {
        FormHandle form;
        if (!load_form(formPath, form)) return 1;
        qpc_status st = qpc_analyze_json(form.ptr, &out.ptr);
        if (st != QPC_OK) return fail(st);
        if (asJson) std::cout << out.ptr << "\n";
        else print_analyze(json::parse(out.ptr));
        return 0;
    }
    if (local->parsed()) {
        FormHandle form;
        if (!load_form(formPath, form) || !resolve_t(form, tSet, t)) return 1;
        qpc_status st = qpc_local_json(form.ptr, t, pmax, &out.ptr);
        if (st != QPC_OK) return fail(st);
        if (asJson) std::cout << out.ptr << "\n";
        else print_local(json::parse(out.ptr));
        return 0;
    }
    if (series->parsed()) {
        FormHandle form;
        if (!load_form(formPath, form) || !resolve_t(form, tSet, t)) return 1;
        qpc_status st = qpc_series_json(form.ptr, t, tol, &out.ptr);
        if (st != QPC_OK) return fail(st);
        if (asJson) {
            std::cout << out.ptr << "\n";
        } else {
            json j = json::parse(out.ptr);
            std::cout << "singular series = " << j["value"].get<double>() << "  (tail bound "
                      << j["tail_bound"].get<double>() << ", primes up to "
                      << j["Q0"].get<int64_t>() << ")\n";
        }
        return 0;
    }
    if (integral->parsed()) {
        FormHandle form;
        if (!load_form(formPath, form) || !resolve_t(form, tSet, t)) return 1;
        qpc_status st = qpc_integral_json(form.ptr, t, X, samples, seed, &out.ptr);
        if (st != QPC_OK) return fail(st);
        if (asJson) {
            std::cout << out.ptr << "\n";
        } else {
            json j = json::parse(out.ptr);
            std::cout << "singular integral = " << j["value"].get<double>() << " +- "
                      << j["stderr"].get<double>() << "  (" << j["samples"].get<uint64_t>()
                      << " samples, seed " << j["seed"].get<uint64_t>() << ")\n";
        }
        return 0;
    }
    if (count->parsed()) {
        FormHandle form;
        if (!load_form(formPath, form) || !resolve_t(form, tSet, t)) return 1;
        qpc_status st = qpc_count_json(form.ptr, t, Xi, threads, budget, &out.ptr);
        if (st != QPC_OK) return fail(st);
        if (asJson) {
            std::cout << out.ptr << "\n";
        } else {
            json j = json::parse(out.ptr);
            std::cout << "N = " << j["count"].get<double>() << "  ("
                      << j["method"].get<std::string>() << ")\n";
        }
        return 0;
    }
    if (predict->parsed()) {
        FormHandle form;
        if (!load_form(formPath, form) || !resolve_t(form, tSet, t)) return 1;
        qpc_status st = qpc_predict_json(form.ptr, t, X, tol, samples, seed, threads, &out.ptr);
        if (st != QPC_OK) return fail(st);
        if (asJson) {
            std::cout << out.ptr << "\n";
        } else {
            json j = json::parse(out.ptr);
            std::cout << "series = " << j["series"].get<double>()
                      << ", integral = " << j["integral"].get<double>() << " +- "
                      << j["integral_stderr"].get<double>()
                      << ", main term = " << j["main_term"].get<double>() << "\n";
            if (j.contains("exact_count"))
                std::cout << "exact N = " << j["exact_count"].get<double>() << "\n";
            if (j.contains("ratio")) std::cout << "ratio = " << j["ratio"].get<double>() << "\n";
        }
        return 0;
    }
    if (cmp->parsed()) {
        FormHandle form;
        if (!load_form(formPath, form) || !resolve_t(form, tSet, t)) return 1;
        qpc_status st = qpc_compare_json(form.ptr, t, Xs.data(), Xs.size(), tol, samples, seed,
                                         threads, &out.ptr);
        if (st != QPC_OK) return fail(st);
        json j = json::parse(out.ptr);
        if (asJson) std::cout << out.ptr << "\n";
        else std::cout << j["csv"].get<std::string>();
        if (!csvPath.empty()) {
            std::ofstream f(csvPath);
            f << j["csv"].get<std::string>();
        }
        return 0;
    }
    if (arcs->parsed()) {
        qpc_status st = qpc_arcs_json(xStr.c_str(), qStr.c_str(), &out.ptr);
        if (st != QPC_OK) return fail(st);
        if (asJson) {
            std::cout << out.ptr << "\n";
        } else {
            json j = json::parse(out.ptr);
            std::cout << j["arc_count"].get<size_t>() << " arcs, disjoint: "
                      << (j["disjoint"].get<bool>() ? "yes" : "no")
                      << ", total measure = " << j["total_measure"].get<std::string>() << " ("
                      << j["total_measure_value"].get<double>() << ")\n";
            std::cout << "q     a     center        halfwidth\n";
            for (const auto& a : j["arcs"])
                std::printf("%-5lld %-5lld %-13s %s\n",
                            static_cast<long long>(a["q"].get<int64_t>()),
                            static_cast<long long>(a["a"].get<int64_t>()),
                            a["center"].get<std::string>().c_str(),
                            a["halfwidth"].get<std::string>().c_str());
        }
        return 0;
    }
    if (lemmas->parsed()) {
        qpc_status st = qpc_check_lemmas_json(lemmaSeed, &out.ptr);
        if (st != QPC_OK) return fail(st);
        if (asJson) {
            std::cout << out.ptr << "\n";
        } else {
            json j = json::parse(out.ptr);
            std::cout << "pair-count inequality: " << j["pair_count_instances"].get<int>()
                      << " instances, " << j["pair_count_violations"].get<int>()
                      << " violations\n";
            std::cout << "bilinear zero-count fitted constant: "
                      << j["bilinear_fitted_constant"].get<double>() << " over "
                      << j["bilinear_instances"].get<int>() << " instances\n";
        }
        return 0;
    }
    return 0;
}
