/* Minimal round trip through the C API. Build, from the workspace root:
 *
 *   cargo build -p spinorb-ffi --release
 *   cc crates/ffi/examples/demo.c -Icrates/ffi/include \
 *      target/release/libspinorb_ffi.a -lm -o demo
 */
#include <stdio.h>

#include "spinorb.h"

static int check(int32_t rc, const char *what) {
  if (rc != SPINORB_OK) {
    char msg[256];
    spinorb_last_error(msg, sizeof msg);
    fprintf(stderr, "%s failed (%d): %s\n", what, rc, msg);
    return 1;
  }
  return 0;
}

int main(void) {
  SpinorbModel *model = NULL;
  SpinorbComplex z = {-1.5, 0.7};
  SpinorbKernel g;
  SpinorbRenorm t;
  double levels[16];
  size_t n_levels = 0;
  size_t i;

  printf("spinorb %s\n", spinorb_version());

  if (check(spinorb_model_new('R', 0.8, 1.0, 0.3, &model), "model_new"))
    return 1;

  if (check(spinorb_green(model, 0.4, -0.1, -0.3, 0.55, z, &g), "green"))
    return 1;
  printf("G11 = %+.12f %+.12fi\n", g.g11.re, g.g11.im);
  printf("G12 = %+.12f %+.12fi\n", g.g12.re, g.g12.im);

  if (check(spinorb_green_ren(model, z, &t), "green_ren"))
    return 1;
  printf("T_up = %+.12f %+.12fi\n", t.diag_up.re, t.diag_up.im);

  if (check(spinorb_levels(model, 6, levels, 16, &n_levels), "levels"))
    return 1;
  printf("%zu levels from n <= 6, lowest:", n_levels);
  for (i = 0; i < 5 && i < n_levels && i < 16; i++)
    printf(" %.6f", levels[i]);
  printf("\n");

  spinorb_model_free(model);
  return 0;
}
