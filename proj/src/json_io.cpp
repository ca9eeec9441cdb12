#include "qpc/json_io.hpp"

#include <json.hpp>

#include <stdexcept>

#include "qpc/errors.hpp"

namespace qpc {

using nlohmann::json;

FormDocument parse_form_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("form file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("matrix"))
        throw std::invalid_argument("form file: expected an object with a \"matrix\" field");
    const json& m = doc["matrix"];
    if (!m.is_array() || m.empty())
        throw std::invalid_argument("form file: \"matrix\" must be a non-empty array of rows");
    const std::size_t n = m.size();
    if (doc.contains("n") && doc["n"].get<std::size_t>() != n)
        throw std::invalid_argument("form file: \"n\" disagrees with the matrix size");
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!m[i].is_array() || m[i].size() != n)
            throw std::invalid_argument("form file: matrix rows must all have length n");
        for (std::size_t j = 0; j < n; ++j) {
            if (!m[i][j].is_number_integer())
                throw std::invalid_argument("form file: matrix entries must be integers");
            i64 v = m[i][j].get<i64>();
            if (v >= (i64{1} << 31) || v <= -(i64{1} << 31))
                throw std::invalid_argument("form file: entries must fit in 32 bits");
            a(i, j) = v;
        }
    }
    if (!a.is_symmetric())
        throw std::invalid_argument("form file: matrix must be symmetric");
    FormDocument fd{QuadraticForm(std::move(a)), std::nullopt};
    if (doc.contains("t")) fd.t = doc["t"].get<i64>();
    return fd;
}

namespace {

json witness_json(const WitnessIndices& w) {
    json j;
    switch (w.kind) {
        case WitnessKind::L511_case_i: j["kind"] = "L511_case_i"; break;
        case WitnessKind::L511_case_ii: j["kind"] = "L511_case_ii"; break;
        case WitnessKind::L513: j["kind"] = "L513"; break;
    }
    j["indices"] = w.indices;
    std::vector<std::string> aux;
    for (const Rat& r : w.auxiliary) aux.push_back(r.get_str());
    j["nonzero_d"] = aux;
    return j;
}

} // namespace

std::string analyze_json(const QuadraticForm& form) {
    json j;
    j["n"] = form.n();
    j["rank"] = form.rank();
    ClassificationReport rep = classify(form);
    j["case"] = case_tag_name(rep.caseTag);
    j["perm"] = rep.perm;
    if (rep.offRank) j["off_rank"] = *rep.offRank;
    if (rep.caseTag == CaseTag::GoodMinor) {
        j["minor_rows"] = rep.minorRows;
        j["minor_cols"] = rep.minorCols;
    }
    if (rep.caseTag == CaseTag::OffRank3_L51 || rep.caseTag == CaseTag::OffRank3_L52 ||
        rep.caseTag == CaseTag::OffRank3_L53 || rep.caseTag == CaseTag::OffRank3_L54) {
        j["b_ranks"] = rep.bRanks;
        VerificationResult ver = verify_structure(form, rep);
        j["structure_verified"] = ver.pass;
        if (!ver.pass) {
            j["structure_fail_entry"] = {ver.fail_i, ver.fail_j};
            j["structure_fail_detail"] = ver.detail;
        }
        if (ver.pass && (rep.caseTag == CaseTag::OffRank3_L53 ||
                         rep.caseTag == CaseTag::OffRank3_L54))
            j["witness"] = witness_json(select_witnesses(form, rep));
    } else {
        OffRankWitness off = off_diagonal_rank(form);
        j["off_rank"] = off.rank;
        if (off.rank > 0) {
            j["off_rank_rows"] = off.rowSet;
            j["off_rank_cols"] = off.colSet;
        }
    }
    return j.dump(2);
}

std::string local_json(const QuadraticForm& form, i64 t, i64 P0) {
    json j;
    j["t"] = t;
    j["P0"] = P0;
    json table = json::array();
    std::vector<i64> obstructed;
    for (i64 p : primes_up_to(P0)) {
        LocalDensityReport rep = chi_p(form, t, p);
        json row;
        row["p"] = p;
        row["chi"] = rep.chi;
        row["M_used"] = rep.M_used;
        row["stabilized"] = rep.stabilized;
        row["method"] = rep.method == LocalDensityReport::Method::ClosedFormFp ? "closed_form_Fp"
                                                                               : "enumeration";
        row["partial_sums"] = rep.partialSums;
        table.push_back(row);
        if (rep.stabilized && rep.chi == 0.0) obstructed.push_back(p);
    }
    j["chi_table"] = table;
    j["obstructions"] = obstructed;
    return j.dump(2);
}

std::string series_json(const QuadraticForm& form, i64 t, double tol) {
    SeriesEstimate est = singular_series(form, t, tol);
    json j;
    j["t"] = t;
    j["value"] = est.value;
    j["partial"] = est.partial;
    j["tail_bound"] = est.tailBound;
    j["Q0"] = est.Q0;
    j["fitted_decay_constant"] = est.fittedDecayC;
    json factors = json::array();
    for (auto [p, chi] : est.perPrimeFactors) factors.push_back({{"p", p}, {"chi", chi}});
    j["per_prime"] = factors;
    return j.dump(2);
}

std::string integral_json(const QuadraticForm& form, i64 t, double X, u64 samples, u64 seed) {
    IntegralEstimate est = singular_integral_coarea(form, t, X, samples, seed);
    json j;
    j["t"] = t;
    j["X"] = X;
    j["value"] = est.value;
    j["stderr"] = est.stderr_;
    j["samples"] = est.samples;
    j["seed"] = est.seed;
    j["method"] = "coarea";
    j["degenerate_samples"] = est.degenerateSamples;
    return j.dump(2);
}

std::string count_json(const QuadraticForm& form, i64 t, i64 X, int threads, double budget) {
    json j;
    j["t"] = t;
    j["X"] = X;
    if (form.is_diagonal()) {
        std::vector<i64> coeffs(form.n());
        for (std::size_t i = 0; i < form.n(); ++i) coeffs[i] = form.matrix()(i, i);
        j["count"] = count_diagonal(coeffs, t, X);
        j["method"] = "diagonal_convolution";
    } else {
        j["count"] = count_exact(form, t, X, threads, budget);
        j["method"] = "exact_enumeration";
    }
    return j.dump(2);
}

namespace {

json prediction_json(const PredictionReport& rep) {
    json j;
    j["X"] = rep.X;
    j["t"] = rep.t;
    j["series"] = rep.series.value;
    j["series_tail_bound"] = rep.series.tailBound;
    j["integral"] = rep.integral.value;
    j["integral_stderr"] = rep.integral.stderr_;
    j["main_term"] = rep.mainTerm;
    if (rep.exactCount) j["exact_count"] = *rep.exactCount;
    if (rep.ratio) j["ratio"] = *rep.ratio;
    j["form_digest"] = rep.formDigest;
    j["elapsed_seconds"] = rep.elapsedSeconds;
    if (rep.rankBelow5) j["rank_below_5"] = true;
    return j;
}

} // namespace

std::string predict_json(const QuadraticForm& form, i64 t, double X, const PredictOptions& opts) {
    return prediction_json(predict(form, t, X, opts)).dump(2);
}

std::string compare_json(const QuadraticForm& form, i64 t, const std::vector<double>& Xs,
                         const PredictOptions& opts) {
    auto rows = compare(form, t, Xs, opts);
    json j;
    j["t"] = t;
    j["csv"] = compare_csv(rows);
    json arr = json::array();
    for (const CompareRow& r : rows) {
        json row;
        row["X"] = r.X;
        if (r.exactCount) row["N_exact"] = *r.exactCount;
        row["S_series"] = r.series;
        row["I_integral"] = r.integral;
        row["I_stderr"] = r.integralStderr;
        row["main_term"] = r.mainTerm;
        if (r.ratio) row["ratio"] = *r.ratio;
        arr.push_back(row);
    }
    j["rows"] = arr;
    return j.dump(2);
}

std::string arcs_json(const std::string& X, const std::string& Q) {
    auto xr = rat_of_string(X);
    auto qr = rat_of_string(Q);
    if (!xr || !qr) throw std::invalid_argument("arcs: X and Q must be decimal or rational");
    ArcDissection d = build_dissection(*xr, *qr);
    json j;
    j["X"] = xr->get_str();
    j["Q"] = qr->get_str();
    j["arc_count"] = d.arcs.size();
    j["disjoint"] = d.disjoint;
    j["total_measure"] = d.totalMeasure.get_str();
    j["total_measure_value"] = d.totalMeasure.get_d();
    j["ambient"] = {d.ambientLo.get_str(), d.ambientHi.get_str()};
    json arcs = json::array();
    for (const Arc& a : d.arcs) {
        arcs.push_back({{"q", a.q},
                        {"a", a.a},
                        {"center", a.center.get_str()},
                        {"halfwidth", a.halfwidth.get_str()}});
    }
    j["arcs"] = arcs;
    return j.dump(2);
}

std::string check_lemmas_json(u64 seed) {
    SmallCaseReport rep = smallcase_lemma_checks(seed);
    json j;
    j["seed"] = seed;
    j["pair_count_instances"] = rep.pairCountInstances;
    j["pair_count_violations"] = rep.violations;
    j["bilinear_instances"] = rep.lemma57Instances;
    j["bilinear_fitted_constant"] = rep.lemma57FittedConstant;
    return j.dump(2);
}

} // namespace qpc
