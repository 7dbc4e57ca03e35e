#ifndef COEXIST_CAPI_H
#define COEXIST_CAPI_H

/* C interface of the coexist library: decide joint measurability of qubit
 * effect pairs, construct explicit joint observables, and cross-check the
 * analytic criteria against a convex-feasibility search.
 *
 * Effects are 2x2 positive operators below the identity, passed around as
 * the four real coefficients of the identity/Pauli basis. Opaque handles
 * own validated effects; every fallible call returns a status code and
 * leaves a human-readable detail string in coexist_last_error_message().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define COEXIST_API __declspec(dllexport)
#else
#  define COEXIST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum coexist_status {
  COEXIST_OK = 0,
  COEXIST_ERROR_INVALID_ARGUMENT = 1,
  COEXIST_ERROR_PARSE = 2,
  COEXIST_ERROR_NOT_AN_EFFECT = 3,
  COEXIST_ERROR_NON_ORTHOGONAL_ROTATION = 4,
  COEXIST_ERROR_DEGENERATE_SUBSPACE = 5,
  COEXIST_ERROR_DEGENERATE_CROSS = 6,
  COEXIST_ERROR_NOT_SPACELIKE = 7,
  COEXIST_ERROR_COMMUTING = 8,
  COEXIST_ERROR_NOT_COEXISTENT = 9,
  COEXIST_ERROR_POSITIVITY = 10,
  COEXIST_ERROR_BUFFER_TOO_SMALL = 11,
  COEXIST_ERROR_INTERNAL = 12
} coexist_status;

/* Decision routes. */
#define COEXIST_ROUTE_TRIVIAL_COMPARABLE 0
#define COEXIST_ROUTE_TRIVIAL_COMMUTING 1
#define COEXIST_ROUTE_MAIN_CRITERION 2

/* Comparability of a pair (fc is the complement of f). */
#define COEXIST_COMPARE_NONE 0
#define COEXIST_COMPARE_E_BELOW_F 1
#define COEXIST_COMPARE_F_BELOW_E 2
#define COEXIST_COMPARE_E_BELOW_FC 3
#define COEXIST_COMPARE_E_ABOVE_FC 4

/* Effect classification. */
#define COEXIST_EFFECT_ZERO 0
#define COEXIST_EFFECT_ONE 1
#define COEXIST_EFFECT_TRIVIAL 2
#define COEXIST_EFFECT_SHARP_NONTRIVIAL 3
#define COEXIST_EFFECT_UNSHARP 4

/* Joint-observable construction routes. */
#define COEXIST_CONSTRUCT_COMPARABLE_A_E 0
#define COEXIST_CONSTRUCT_COMPARABLE_A_F 1
#define COEXIST_CONSTRUCT_COMPARABLE_A_ZERO 2
#define COEXIST_CONSTRUCT_COMPARABLE_A_OVERLAP 3
#define COEXIST_CONSTRUCT_COMMUTING 4
#define COEXIST_CONSTRUCT_GENERIC 5
#define COEXIST_CONSTRUCT_DEGENERATE_FALLBACK 6

/* Free-parameter policies for the generic construction. */
#define COEXIST_LAMBDA_GEOMETRIC 0
#define COEXIST_LAMBDA_LO 1
#define COEXIST_LAMBDA_HI 2
#define COEXIST_LAMBDA_QUANTILE 3

/* Samplers. */
#define COEXIST_SAMPLER_UNIFORM 0
#define COEXIST_SAMPLER_BOUNDARY 1

/* Default tolerance of the order and classification predicates. */
#define COEXIST_DEFAULT_TOL 1e-9

typedef struct coexist_effect coexist_effect;
typedef struct coexist_sampler coexist_sampler;

/* Full decision diagnostics. Verdict fields are 1/0, or -1 when not
 * evaluated (trivial routes). */
typedef struct coexist_report {
  int coexistent;
  int route;
  int comparable;
  int commuting;
  int spacelike;
  int swap_applied;
  double cross_mag;
  double lhs_main, rhs_main, margin; /* margin = rhs_main - lhs_main */
  int verdict_main;
  int verdict_commutator;
  int verdict_disjunctive;
  int verdict_sharpness_form;
  int disjuncts[3];
  int sharpness_guarded;
  /* pair invariants */
  double C, Cp, D, Delta, GammaP, GammaM, GammaPp, GammaMp, N, Np, dd;
  /* per-effect sharpness */
  double F_e, S_e, bias_e;
  double F_f, S_f, bias_f;
} coexist_report;

/* Admissible lambda-intervals of the generic construction. */
typedef struct coexist_segments_info {
  double lam_a_minus, lam_a_plus;
  double lam_b_minus, lam_b_plus;
  double lam_lo, lam_hi;
  double hyper_const;
  int swapped;
  double gap; /* lam_a_minus - lam_b_plus; positive iff infeasible */
} coexist_segments_info;

typedef struct coexist_joint {
  double a[4];
  double outcomes[4][4]; /* {a, e-a, f-a, 1-e-f+a} row-major */
  int route;
  int swapped;
  double lam_star, mu_star;
  int has_segments;
  coexist_segments_info segments;
} coexist_joint;

typedef struct coexist_joint_check {
  double positivity_violation;
  double sum_violation;
  double marginal_e_violation;
  double marginal_f_violation;
  int pass;
} coexist_joint_check;

typedef struct coexist_feasibility {
  int feasible;
  double best_margin;
  double argmax_a[4];
  int64_t evaluations;
  int budget_exhausted;
  double tol;
} coexist_feasibility;

/* Unbiased special case in its three equivalent forms. */
typedef struct coexist_unbiased_report {
  int coexistent; /* verdict of the diagonal form */
  int radius_form, cross_form, diagonal_form;
  double margin_radius, margin_cross, margin_diagonal;
} coexist_unbiased_report;

COEXIST_API const char* coexist_version(void);

COEXIST_API const char* coexist_status_name(coexist_status status);

/* Detail message of the last failing call on this thread. */
COEXIST_API const char* coexist_last_error_message(void);

/* ---- effects ---------------------------------------------------------- */

/* Validates coeffs (identity coefficient first) and allocates a handle. */
COEXIST_API coexist_status coexist_effect_create(const double coeffs[4],
                                                 double tol,
                                                 coexist_effect** out);

/* Parses {"coeffs": [c0, c1, c2, c3]}. */
COEXIST_API coexist_status coexist_effect_from_json(const char* json,
                                                    double tol,
                                                    coexist_effect** out);

COEXIST_API void coexist_effect_free(coexist_effect* effect);

COEXIST_API coexist_status coexist_effect_coeffs(const coexist_effect* effect,
                                                 double out[4]);

/* Writes the canonical JSON form (17 significant digits). `len` receives the
 * string length excluding the terminator. */
COEXIST_API coexist_status coexist_effect_to_json(const coexist_effect* effect,
                                                  char* buf, size_t cap,
                                                  size_t* len);

COEXIST_API coexist_status coexist_effect_complement(const coexist_effect* effect,
                                                     coexist_effect** out);

/* One of the COEXIST_EFFECT_* classes, or a negative status on error. */
COEXIST_API int coexist_effect_classify(const coexist_effect* effect, double tol);

/* out = {F, S, bias}: unsharpness, sharpness = 1 - F^2, and 2*c0 - 1. */
COEXIST_API coexist_status coexist_effect_sharpness(const coexist_effect* effect,
                                                    double out[3]);

/* ---- decision --------------------------------------------------------- */

COEXIST_API coexist_status coexist_check(const coexist_effect* e,
                                         const coexist_effect* f, double tol,
                                         coexist_report* out);

/* Unbiased effects given by Bloch vectors of length <= 1. */
COEXIST_API coexist_status coexist_check_unbiased(const double e_bloch[3],
                                                  const double f_bloch[3],
                                                  double tol,
                                                  coexist_unbiased_report* out);

/* Segment endpoints for a spacelike noncommuting pair; fails with
 * NOT_SPACELIKE / COMMUTING / DEGENERATE_CROSS otherwise. */
COEXIST_API coexist_status coexist_segments(const coexist_effect* e,
                                            const coexist_effect* f, double tol,
                                            coexist_segments_info* out);

/* ---- construction ----------------------------------------------------- */

/* Builds the joint observable. `quantile` is only read under
 * COEXIST_LAMBDA_QUANTILE. Fails with NOT_COEXISTENT for incompatible
 * pairs. */
COEXIST_API coexist_status coexist_construct(const coexist_effect* e,
                                             const coexist_effect* f, double tol,
                                             int lambda_policy, double quantile,
                                             coexist_joint* out);

/* Checks positivity, the sum to identity and both marginals of a joint
 * observable given as four coefficient rows. */
COEXIST_API coexist_status coexist_verify_joint(const double outcomes[4][4],
                                                const double e[4],
                                                const double f[4], double tol,
                                                coexist_joint_check* out);

/* ---- oracle ----------------------------------------------------------- */

/* Positivity margin of a candidate corner effect a. */
COEXIST_API coexist_status coexist_oracle_margin(const double a[4],
                                                 const coexist_effect* e,
                                                 const coexist_effect* f,
                                                 double* out);

/* Criteria-free feasibility decision by margin maximization. */
COEXIST_API coexist_status coexist_oracle_solve(const coexist_effect* e,
                                                const coexist_effect* f,
                                                double tol, int64_t budget,
                                                uint64_t seed,
                                                coexist_feasibility* out);

/* ---- sampling --------------------------------------------------------- */

/* Deterministic seeded effect sampler; kind is COEXIST_SAMPLER_*. */
COEXIST_API coexist_status coexist_sampler_create(int kind, uint64_t seed,
                                                  coexist_sampler** out);

COEXIST_API coexist_status coexist_sampler_next(coexist_sampler* sampler,
                                                double out_coeffs[4]);

COEXIST_API void coexist_sampler_free(coexist_sampler* sampler);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* COEXIST_CAPI_H */
