/* C interface to the sgk verification library. */
#ifndef SGK_SGK_H
#define SGK_SGK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SGK_API __declspec(dllexport)
#else
#define SGK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sgk_status {
  SGK_OK = 0,
  SGK_ERR_PARSE = 1,
  SGK_ERR_INVALID = 2,
  SGK_ERR_DEGENERATE = 3,
  SGK_ERR_DIMENSION = 4,
  SGK_ERR_PARENT = 5,
  SGK_ERR_IO = 6,
  SGK_ERR_ARGUMENT = 7, /* null pointer or out-of-range argument */
  SGK_ERR_INTERNAL = 8
} sgk_status;

typedef struct sgk_report sgk_report;
typedef struct sgk_algebra sgk_algebra;
typedef struct sgk_pair sgk_pair;
typedef struct sgk_subpair sgk_subpair;

typedef struct sgk_options {
  int degree;        /* 0: the command's default bound */
  int closure_depth; /* -1: as in the pair file */
  uint64_t seed;
  int allow_invalid;
  int pairs;         /* product pairs for coset-check */
} sgk_options;

SGK_API const char* sgk_version(void);
SGK_API const char* sgk_status_name(sgk_status status);
/* Message of the last failed call on this thread; empty after a successful call. */
SGK_API const char* sgk_last_error(void);

SGK_API void sgk_options_init(sgk_options* opts);
/* Commands: check-jacobi, check-hopf, check-group-axioms, split-check, coset-check,
   isotropy-rep, morphism-check, demo-cp12. */
SGK_API size_t sgk_command_count(void);
SGK_API const char* sgk_command_name(size_t index);
SGK_API const char* sgk_command_help(void);
SGK_API sgk_status sgk_run(const char* command, const char* const* inputs, size_t n_inputs, const sgk_options* opts,
                           sgk_report** out);

/* Reports. Returned strings stay valid until the report is freed or the next call on it. */
SGK_API size_t sgk_report_line_count(const sgk_report* r);
SGK_API int sgk_report_line_pass(const sgk_report* r, size_t index);
SGK_API const char* sgk_report_line_check(const sgk_report* r, size_t index);
SGK_API const char* sgk_report_line_detail(const sgk_report* r, size_t index);
SGK_API size_t sgk_report_pass_count(const sgk_report* r);
SGK_API size_t sgk_report_fail_count(const sgk_report* r);
SGK_API const char* sgk_report_text(sgk_report* r);
/* {"pass":P,"fail":F,"elapsed":E}; E is null when elapsed_seconds < 0. */
SGK_API const char* sgk_report_summary(sgk_report* r, double elapsed_seconds);
SGK_API void sgk_report_free(sgk_report* r);

/* Algebras and pairs loaded from definition files. */
SGK_API sgk_status sgk_algebra_load(const char* path, int allow_invalid, sgk_algebra** out);
SGK_API size_t sgk_algebra_even_dim(const sgk_algebra* a);
SGK_API size_t sgk_algebra_odd_dim(const sgk_algebra* a);
SGK_API const char* sgk_algebra_basis_name(const sgk_algebra* a, size_t index);
/* 1 if [g1,g1] = 0, else 0 and the witness indices (if non-null) are set. */
SGK_API int sgk_algebra_is_split(const sgk_algebra* a, size_t* witness_left, size_t* witness_right);
SGK_API sgk_status sgk_algebra_jacobi(const sgk_algebra* a, sgk_report** out);
SGK_API sgk_status sgk_algebra_hopf(const sgk_algebra* a, int degree, sgk_report** out);
SGK_API void sgk_algebra_free(sgk_algebra* a);

SGK_API sgk_status sgk_pair_load(const char* path, int allow_invalid, sgk_pair** out);
SGK_API sgk_status sgk_pair_algebra(const sgk_pair* p, sgk_algebra** out);
SGK_API sgk_status sgk_pair_group_axioms(const sgk_pair* p, int degree, sgk_report** out);
SGK_API sgk_status sgk_pair_split_check(const sgk_pair* p, sgk_report** out);
SGK_API void sgk_pair_free(sgk_pair* p);

SGK_API sgk_status sgk_subpair_load(const char* path, int allow_invalid, sgk_subpair** out);
SGK_API size_t sgk_subpair_quotient_dim(const sgk_subpair* s);
/* psi(h) for h given row-major as n*n scalar strings; writes q*q scalar strings into a
   newly allocated array released with sgk_strings_free. */
SGK_API sgk_status sgk_subpair_isotropy(const sgk_subpair* s, const char* const* h_entries, size_t n_entries,
                                        char*** out_entries, size_t* out_count);
SGK_API sgk_status sgk_subpair_split_check(const sgk_subpair* s, sgk_report** out);
SGK_API void sgk_subpair_free(sgk_subpair* s);

SGK_API void sgk_strings_free(char** strings, size_t count);

#ifdef __cplusplus
}
#endif

#endif
