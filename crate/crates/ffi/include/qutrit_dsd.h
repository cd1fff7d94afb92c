/* C interface to the qutrit dephasing engine.
 *
 * Conventions: every function returns an int32_t status code (QDSD_OK
 * on success) and writes results through out-pointers. Null pointers
 * are tolerated and reported as QDSD_ERR_NULL_POINTER; any non-null
 * pointer must be valid for the documented access. qdsd_last_error()
 * returns a thread-local message for the most recent failure on the
 * calling thread, valid until the next failing call there. States are
 * opaque handles owned by the caller; release them with
 * qdsd_state_free. Times are measured on the Gamma*t axis with
 * Gamma = max(gamma1, gamma2), matching the command-line tool.
 */

#ifndef QUTRIT_DSD_H
#define QUTRIT_DSD_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. */
#define QDSD_OK 0
#define QDSD_ERR_NULL_POINTER 1
#define QDSD_ERR_INVALID_ARGUMENT 2
#define QDSD_ERR_NUMERIC 3

/* Family codes for the parameterized initial states. */
#define QDSD_FAMILY_HORODECKI 0
#define QDSD_FAMILY_ROTATED 1
#define QDSD_FAMILY_ISOTROPIC 2

/* Noise-placement codes: which dephasing sources act. */
#define QDSD_MODE_GLOBAL 0
#define QDSD_MODE_MULTILOCAL 1
#define QDSD_MODE_COLLECTIVE 2

/* Regime codes reported by the classifiers. */
#define QDSD_REGIME_NO_ESD 0
#define QDSD_REGIME_ESD_ONLY 1
#define QDSD_REGIME_DSD_WINDOW 2
#define QDSD_REGIME_UNDETERMINED 3

/* Opaque handle around a validated 3x3-by-3x3 density matrix. */
typedef struct QdsdState QdsdState;

/* Classification result; has_* flags gate the adjacent values. */
typedef struct QdsdRegimeReport {
  int32_t regime;
  int32_t has_t_n;
  double t_n;
  int32_t has_t_r;
  double t_r;
  int32_t has_window;
  double window_lo;
  double window_hi;
  int32_t warning_count;
} QdsdRegimeReport;

/* Thread-local message for the most recent failure; empty when none. */
const char *qdsd_last_error(void);

/* Constructors. Family parameters: alpha in [2, 5] for the Horodecki
 * and rotated families, mixing weight p in [0, 1] for isotropic. */
int32_t qdsd_state_family(int32_t family, double param, QdsdState **out);
int32_t qdsd_state_max_entangled(QdsdState **out);

/* Builds a state from 81 row-major complex entries given as 162
 * doubles (re, im interleaved); must pass density validation. */
int32_t qdsd_state_from_elements(const double *re_im, QdsdState **out);

int32_t qdsd_state_clone(const QdsdState *state, QdsdState **out);
void qdsd_state_free(QdsdState *state);

/* Composite dimension (always 9), or -1 on a null handle. */
int32_t qdsd_state_dim(const QdsdState *state);
int32_t qdsd_state_element(const QdsdState *state, int32_t row, int32_t col,
                           double *re, double *im);
int32_t qdsd_state_to_elements(const QdsdState *state, double *re_im);

/* Evolves to gamma_t under the given placement and rates; writes a new
 * handle and leaves the input untouched. */
int32_t qdsd_evolve(const QdsdState *state, int32_t mode, double gamma1,
                    double gamma2, double gamma_t, QdsdState **out);

/* Entanglement signals. */
int32_t qdsd_negativity(const QdsdState *state, double *out);
int32_t qdsd_ccnr_value(const QdsdState *state, double *out);
int32_t qdsd_min_pt_eigenvalue(const QdsdState *state, double *out);
int32_t qdsd_is_ppt(const QdsdState *state, double tol, int32_t *out);

/* Classifiers: family states by code and parameter, or an arbitrary
 * handle (recognized family members use closed forms). */
int32_t qdsd_classify_family(int32_t family, double param, int32_t mode,
                             double gamma1, double gamma2,
                             QdsdRegimeReport *out);
int32_t qdsd_classify_state(const QdsdState *state, int32_t mode,
                            double gamma1, double gamma2,
                            QdsdRegimeReport *out);

#ifdef __cplusplus
}
#endif

#endif /* QUTRIT_DSD_H */
