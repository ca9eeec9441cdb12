#ifndef QPC_JSON_IO_HPP
#define QPC_JSON_IO_HPP

#include <optional>
#include <string>

#include "qpc/circlekit.hpp"
#include "qpc/classify.hpp"
#include "qpc/harness.hpp"
#include "qpc/quadform.hpp"

namespace qpc {

struct FormDocument {
    QuadraticForm form;
    std::optional<i64> t;
};

// Parses {"n": 5, "matrix": [[...], ...], "t": 5}; t optional. Throws
// std::invalid_argument with a message suitable for users.
FormDocument parse_form_json(const std::string& text);

std::string analyze_json(const QuadraticForm& form);
std::string local_json(const QuadraticForm& form, i64 t, i64 P0);
std::string series_json(const QuadraticForm& form, i64 t, double tol);
std::string integral_json(const QuadraticForm& form, i64 t, double X, u64 samples, u64 seed);
std::string count_json(const QuadraticForm& form, i64 t, i64 X, int threads, double budget);
std::string predict_json(const QuadraticForm& form, i64 t, double X, const PredictOptions& opts);
std::string compare_json(const QuadraticForm& form, i64 t, const std::vector<double>& Xs,
                         const PredictOptions& opts);
std::string arcs_json(const std::string& X, const std::string& Q);
std::string check_lemmas_json(u64 seed);

} // namespace qpc

#endif
