/* C API for the spinorb spin-orbit Green-function library.
 *
 * Hand-maintained mirror of src/lib.rs; keep the two in sync (or regenerate
 * with cbindgen, see cbindgen.toml). Link against the staticlib or cdylib
 * built by `cargo build -p spinorb-ffi --release`.
 */
#ifndef SPINORB_H
#define SPINORB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible call. On failure the output
 * locations are left untouched and a message is stored per thread. */
enum {
  SPINORB_OK = 0,
  /* null pointers, or parameters that never make sense */
  SPINORB_ERR_ARGUMENT = 1,
  /* poles, branch cuts, the wrong field/coupling case */
  SPINORB_ERR_DOMAIN = 2,
  /* evaluation ran but could not reach its accuracy target */
  SPINORB_ERR_ACCURACY = 3,
};

/* Opaque model handle: variant, coupling, field, and Zeeman factor. */
typedef struct SpinorbModel SpinorbModel;

/* A complex number as two doubles, layout-compatible with double _Complex. */
typedef struct SpinorbComplex {
  double re;
  double im;
} SpinorbComplex;

/* The four entries of a 2x2 spin-space kernel, row-major. */
typedef struct SpinorbKernel {
  SpinorbComplex g11;
  SpinorbComplex g12;
  SpinorbComplex g21;
  SpinorbComplex g22;
} SpinorbKernel;

/* The two diagonal entries of the renormalized kernel at coinciding points. */
typedef struct SpinorbRenorm {
  SpinorbComplex diag_up;
  SpinorbComplex diag_down;
} SpinorbRenorm;

/* Version of the underlying library, as a static NUL-terminated string. */
const char *spinorb_version(void);

/* Copies the most recent error message on this thread into buf.
 *
 * Returns the full message length in bytes (excluding the terminating NUL);
 * the copy is truncated to cap - 1 bytes and always NUL-terminated when
 * cap > 0. A zero return means no error has been recorded yet. buf may be
 * NULL (with cap 0) for a pure length query. */
size_t spinorb_last_error(char *buf, size_t cap);

/* Creates a model handle.
 *
 * variant is 'R' (Rashba) or 'D' (Dresselhaus); kappa is the spin-orbit
 * coupling, b the reduced magnetic field, gamma the reduced Zeeman factor.
 * On success writes the new handle to *out; release it with
 * spinorb_model_free. */
int32_t spinorb_model_new(char variant, double kappa, double b, double gamma,
                          SpinorbModel **out);

/* Releases a handle created by spinorb_model_new. NULL is a no-op. */
void spinorb_model_free(SpinorbModel *model);

/* Evaluates the 2x2 resolvent kernel G(r, r'; z) of the model.
 *
 * (x, y) and (xp, yp) are the two points, z the complex energy. The free
 * (b == 0) and magnetic cases are dispatched automatically. */
int32_t spinorb_green(const SpinorbModel *model, double x, double y, double xp,
                      double yp, SpinorbComplex z, SpinorbKernel *out);

/* Evaluates the scalar Landau-level kernel G0(r, r'; z) at field b, without
 * spin-orbit or Zeeman terms. */
int32_t spinorb_green0_landau(double b, double x, double y, double xp,
                              double yp, SpinorbComplex z, SpinorbComplex *out);

/* Evaluates the renormalized kernel at coinciding points: the diagonal of
 * G(r, r; z) after the logarithmic short-distance part is subtracted. */
int32_t spinorb_green_ren(const SpinorbModel *model, SpinorbComplex z,
                          SpinorbRenorm *out);

/* Tabulates the energy levels of the magnetic spin-orbit model, ascending,
 * from oscillator indices 0..=n_max.
 *
 * The total number of levels is written to *out_len; the first
 * min(*out_len, cap) of them are copied into energies. Call with cap == 0
 * (and energies NULL) to query the size first. Requires a nonzero field and
 * coupling (SPINORB_ERR_DOMAIN otherwise). */
int32_t spinorb_levels(const SpinorbModel *model, uint32_t n_max,
                       double *energies, size_t cap, size_t *out_len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPINORB_H */
