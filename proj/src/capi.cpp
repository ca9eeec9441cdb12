#include "qpc.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "qpc/errors.hpp"
#include "qpc/json_io.hpp"

struct qpc_form {
    qpc::QuadraticForm form;
    std::optional<qpc::i64> t;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
qpc_status guarded(char** json_out, Fn&& fn) {
    if (json_out) *json_out = nullptr;
    try {
        std::string result = fn();
        if (json_out) {
            *json_out = dup_string(result);
            if (!*json_out) {
                g_last_error = "out of memory";
                return QPC_ERR_INTERNAL;
            }
        }
        g_last_error.clear();
        return QPC_OK;
    } catch (const qpc::BudgetExceeded& e) {
        g_last_error = e.what();
        return QPC_ERR_BUDGET_EXCEEDED;
    } catch (const qpc::UnsupportedSize& e) {
        g_last_error = e.what();
        return QPC_ERR_UNSUPPORTED_SIZE;
    } catch (const qpc::InvariantViolated& e) {
        g_last_error = e.what();
        return QPC_ERR_INVARIANT_VIOLATED;
    } catch (const qpc::NotStabilized& e) {
        g_last_error = e.what();
        return QPC_ERR_NOT_STABILIZED;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return QPC_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QPC_ERR_INTERNAL;
    }
}

} // namespace

extern "C" {

const char* qpc_status_name(qpc_status status) {
    switch (status) {
        case QPC_OK: return "ok";
        case QPC_ERR_INVALID_ARGUMENT: return "invalid argument";
        case QPC_ERR_PARSE: return "parse error";
        case QPC_ERR_BUDGET_EXCEEDED: return "budget exceeded";
        case QPC_ERR_UNSUPPORTED_SIZE: return "unsupported size";
        case QPC_ERR_INVARIANT_VIOLATED: return "invariant violated";
        case QPC_ERR_NOT_STABILIZED: return "not stabilized";
        case QPC_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* qpc_last_error(void) { return g_last_error.c_str(); }

void qpc_string_free(char* s) { std::free(s); }

qpc_status qpc_form_parse_json(const char* json_text, qpc_form** out) {
    if (!out) {
        g_last_error = "out pointer is null";
        return QPC_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    if (!json_text) {
        g_last_error = "json_text is null";
        return QPC_ERR_INVALID_ARGUMENT;
    }
    try {
        qpc::FormDocument doc = qpc::parse_form_json(json_text);
        *out = new qpc_form{std::move(doc.form), doc.t};
        g_last_error.clear();
        return QPC_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return QPC_ERR_PARSE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QPC_ERR_INTERNAL;
    }
}

void qpc_form_free(qpc_form* form) { delete form; }

int qpc_form_dim(const qpc_form* form) {
    return form ? static_cast<int>(form->form.n()) : 0;
}

int qpc_form_default_t(const qpc_form* form, int64_t* t_out) {
    if (!form || !form->t) return 0;
    if (t_out) *t_out = *form->t;
    return 1;
}

qpc_status qpc_analyze_json(const qpc_form* form, char** json_out) {
    if (!form) {
        g_last_error = "form is null";
        return QPC_ERR_INVALID_ARGUMENT;
    }
    return guarded(json_out, [&] { return qpc::analyze_json(form->form); });
}

qpc_status qpc_local_json(const qpc_form* form, int64_t t, int64_t pmax, char** json_out) {
    if (!form) {
        g_last_error = "form is null";
        return QPC_ERR_INVALID_ARGUMENT;
    }
    return guarded(json_out, [&] { return qpc::local_json(form->form, t, pmax); });
}

qpc_status qpc_series_json(const qpc_form* form, int64_t t, double tol, char** json_out) {
    if (!form) {
        g_last_error = "form is null";
        return QPC_ERR_INVALID_ARGUMENT;
    }
    return guarded(json_out, [&] { return qpc::series_json(form->form, t, tol); });
}

qpc_status qpc_integral_json(const qpc_form* form, int64_t t, double X, uint64_t samples,
                             uint64_t seed, char** json_out) {
    if (!form) {
        g_last_error = "form is null";
        return QPC_ERR_INVALID_ARGUMENT;
    }
    return guarded(json_out, [&] { return qpc::integral_json(form->form, t, X, samples, seed); });
}

qpc_status qpc_count_json(const qpc_form* form, int64_t t, int64_t X, int threads, double budget,
                          char** json_out) {
    if (!form) {
        g_last_error = "form is null";
        return QPC_ERR_INVALID_ARGUMENT;
    }
    return guarded(json_out,
                   [&] { return qpc::count_json(form->form, t, X, threads, budget); });
}

qpc_status qpc_predict_json(const qpc_form* form, int64_t t, double X, double tol,
                            uint64_t samples, uint64_t seed, int threads, char** json_out) {
    if (!form) {
        g_last_error = "form is null";
        return QPC_ERR_INVALID_ARGUMENT;
    }
    return guarded(json_out, [&] {
        qpc::PredictOptions opts;
        opts.tol = tol;
        opts.samples = samples;
        opts.seed = seed;
        opts.threads = threads;
        return qpc::predict_json(form->form, t, X, opts);
    });
}

qpc_status qpc_compare_json(const qpc_form* form, int64_t t, const double* Xs, size_t nXs,
                            double tol, uint64_t samples, uint64_t seed, int threads,
                            char** json_out) {
    if (!form || (!Xs && nXs > 0)) {
        g_last_error = "form or X list is null";
        return QPC_ERR_INVALID_ARGUMENT;
    }
    return guarded(json_out, [&] {
        qpc::PredictOptions opts;
        opts.tol = tol;
        opts.samples = samples;
        opts.seed = seed;
        opts.threads = threads;
        std::vector<double> xs(Xs, Xs + nXs);
        return qpc::compare_json(form->form, t, xs, opts);
    });
}

qpc_status qpc_arcs_json(const char* X, const char* Q, char** json_out) {
    if (!X || !Q) {
        g_last_error = "X or Q is null";
        return QPC_ERR_INVALID_ARGUMENT;
    }
    return guarded(json_out, [&] { return qpc::arcs_json(X, Q); });
}

qpc_status qpc_check_lemmas_json(uint64_t seed, char** json_out) {
    return guarded(json_out, [&] { return qpc::check_lemmas_json(seed); });
}

} // extern "C"
