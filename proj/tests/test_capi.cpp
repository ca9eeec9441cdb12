// Exercises the shared-library surface: handles, status codes, JSON payloads.
#include <cassert>
#include <cstdio>
#include <cstring>
#include <string>

#include "qpc.h"

#define CHECK(cond)                                                        \
    do {                                                                   \
        if (!(cond)) {                                                     \
            std::fprintf(stderr, "FAILED %s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                      \
        }                                                                  \
    } while (0)

namespace {

bool contains(const char* hay, const char* needle) {
    return hay && std::strstr(hay, needle) != nullptr;
}

} // namespace

int main() {
    // parse errors surface as QPC_ERR_PARSE with a message
    qpc_form* bad = nullptr;
    CHECK(qpc_form_parse_json("{not json", &bad) == QPC_ERR_PARSE);
    CHECK(bad == nullptr);
    CHECK(std::strlen(qpc_last_error()) > 0);

    CHECK(qpc_form_parse_json("{\"matrix\": [[1, 2], [3, 4]]}", &bad) == QPC_ERR_PARSE);
    CHECK(contains(qpc_last_error(), "symmetric"));

    // a valid five-squares document with a default t
    const char* doc =
        "{\"n\": 5, \"matrix\": [[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],"
        "[0,0,0,0,1]], \"t\": 29}";
    qpc_form* form = nullptr;
    CHECK(qpc_form_parse_json(doc, &form) == QPC_OK);
    CHECK(form != nullptr);
    CHECK(qpc_form_dim(form) == 5);
    int64_t t = 0;
    CHECK(qpc_form_default_t(form, &t) == 1);
    CHECK(t == 29);

    char* out = nullptr;
    CHECK(qpc_analyze_json(form, &out) == QPC_OK);
    CHECK(contains(out, "\"rank\": 5"));
    CHECK(contains(out, "HypothesesUnmet"));
    qpc_string_free(out);

    CHECK(qpc_local_json(form, 29, 13, &out) == QPC_OK);
    CHECK(contains(out, "\"chi_table\""));
    CHECK(contains(out, "\"obstructions\": []"));
    qpc_string_free(out);

    CHECK(qpc_series_json(form, 29, 1e-9, &out) == QPC_OK);
    CHECK(contains(out, "\"value\""));
    qpc_string_free(out);

    CHECK(qpc_count_json(form, 40, 20, 2, 1e10, &out) == QPC_OK);
    CHECK(contains(out, "diagonal_convolution"));
    qpc_string_free(out);

    CHECK(qpc_integral_json(form, 40, 10.0, 20000, 42, &out) == QPC_OK);
    CHECK(contains(out, "\"stderr\""));
    qpc_string_free(out);

    double Xs[2] = {10.0, 20.0};
    CHECK(qpc_compare_json(form, 29, Xs, 2, 1e-6, 20000, 42, 2, &out) == QPC_OK);
    CHECK(contains(out, "X,N_exact,S_series,I_integral,I_stderr,main_term,ratio"));
    qpc_string_free(out);

    CHECK(qpc_arcs_json("10000", "50", &out) == QPC_OK);
    CHECK(contains(out, "\"disjoint\": true"));
    qpc_string_free(out);
    CHECK(qpc_arcs_json("abc", "50", &out) == QPC_ERR_INVALID_ARGUMENT);

    // the series bails out for rank < 5 with a clear status
    qpc_form* small = nullptr;
    CHECK(qpc_form_parse_json("{\"matrix\": [[1,0],[0,1]]}", &small) == QPC_OK);
    CHECK(qpc_series_json(small, 5, 1e-9, &out) == QPC_ERR_INVALID_ARGUMENT);
    CHECK(contains(qpc_last_error(), "rank"));
    int64_t unused = 0;
    CHECK(qpc_form_default_t(small, &unused) == 0);
    qpc_form_free(small);

    qpc_form_free(form);
    qpc_form_free(nullptr); // must be a no-op

    std::puts("capi: all checks passed");
    return 0;
}
