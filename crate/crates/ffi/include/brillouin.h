#ifndef BRILLOUIN_H
#define BRILLOUIN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define BRL_PROCESS_STOKES 0

#define BRL_PROCESS_ANTI_STOKES 1

#define BRL_SQUEEZE_EXPONENTIAL 0

#define BRL_SQUEEZE_FACTORED 1

typedef enum BrlStatus {
  BRL_STATUS_OK = 0,
  BRL_STATUS_NULL_POINTER = 1,
  BRL_STATUS_INVALID_ARGUMENT = 2,
  BRL_STATUS_STABILITY_VIOLATION = 3,
  BRL_STATUS_DEGENERATE_COUPLING = 4,
  BRL_STATUS_NON_HERMITIAN = 5,
  BRL_STATUS_BUFFER_TOO_SMALL = 6,
  BRL_STATUS_NUMERICAL = 7,
  BRL_STATUS_PANIC = 8,
} BrlStatus;

// Dense operator on a truncated two-mode Fock space.
typedef struct BrlFockOperator BrlFockOperator;

typedef struct BrlKinematics {
  // 1 or 2.
  uint32_t scattered_branch;
  double omega_scattered;
  double k_scattered;
  double q_phonon;
  double energy_mismatch;
  double momentum_mismatch;
} BrlKinematics;

typedef struct BrlStokesModes {
  double r;
  double cosh2;
  double sinh2;
  double splitting;
  double omega_alpha;
  double omega_beta;
  double omega_0;
} BrlStokesModes;

typedef struct BrlPolaritons {
  double omega_plus;
  double omega_minus;
  double x_plus_sq;
  double y_plus_sq;
  double x_minus_sq;
  double y_minus_sq;
  double splitting;
} BrlPolaritons;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *brl_last_error(void);

// Library version as a NUL-terminated static string.
const char *brl_version(void);

// `f = g·√(n_in/u)` with `g` in GHz, `n_in` in photons/s and `u_hz` in Hz.
//
// # Safety
// `out_re` and `out_im` must be valid for writes.
enum BrlStatus brl_effective_coupling(double g_re,
                                      double g_im,
                                      double n_in,
                                      double u_hz,
                                      double *out_re,
                                      double *out_im);

// Phase matching for a pump at `(omega_p, k_p)` on `pump_branch`; the
// scattered photon lands on the other branch.
//
// # Safety
// `result` must be valid for writes.
enum BrlStatus brl_phase_matching(uint32_t process,
                                  double branch1_offset,
                                  double branch2_offset,
                                  double group_velocity,
                                  double phonon_frequency,
                                  uint32_t pump_branch,
                                  double omega_p,
                                  double k_p,
                                  struct BrlKinematics *result);

// Bogoliubov normal modes of the Stokes Hamiltonian.
//
// # Safety
// `result` must be valid for writes.
enum BrlStatus brl_stokes_diagonalize(double detuning,
                                      double phonon,
                                      double coupling,
                                      struct BrlStokesModes *result);

// Writes `c_n = tanhⁿ r / cosh r` for `n < len`.
//
// # Safety
// `amplitudes` must be valid for `len` writes.
enum BrlStatus brl_squeezed_amplitudes(double r, double *amplitudes, size_t len);

// Mean pair number `sinh² r` and entanglement entropy (nats).
//
// # Safety
// Both out-pointers must be valid for writes.
enum BrlStatus brl_squeezed_statistics(double r, double *mean_pairs, double *entropy);

// Fidelity of the two-term `|0,0⟩ + r|1,1⟩` state with the squeezed vacuum.
//
// # Safety
// `fidelity` must be valid for writes.
enum BrlStatus brl_bell_fidelity(double r, double *fidelity);

// Polariton frequencies and phonon/photon fractions.
//
// # Safety
// `result` must be valid for writes.
enum BrlStatus brl_antistokes_diagonalize(double detuning,
                                          double phonon,
                                          double coupling_re,
                                          double coupling_im,
                                          struct BrlPolaritons *result);

// Photon population at time `t` starting from one photon and no phonon.
//
// # Safety
// `population` must be valid for writes.
enum BrlStatus brl_photon_population(double detuning,
                                     double phonon,
                                     double coupling_re,
                                     double coupling_im,
                                     double t,
                                     double *population);

// Bose-Einstein occupation of a mode at `freq_hz` (ordinary frequency).
//
// # Safety
// `occupation` must be valid for writes.
enum BrlStatus brl_thermal_occupation(double freq_hz, double temperature_k, double *occupation);

// Truncated Stokes Hamiltonian, `n_max` quanta per mode. Release with
// [`brl_fock_operator_free`].
//
// # Safety
// `handle` must be valid for writes.
enum BrlStatus brl_fock_stokes_hamiltonian(double detuning,
                                           double phonon,
                                           double coupling,
                                           size_t n_max,
                                           struct BrlFockOperator **handle);

// Truncated anti-Stokes Hamiltonian. Release with [`brl_fock_operator_free`].
//
// # Safety
// `handle` must be valid for writes.
enum BrlStatus brl_fock_antistokes_hamiltonian(double detuning,
                                               double phonon,
                                               double coupling_re,
                                               double coupling_im,
                                               size_t n_max,
                                               struct BrlFockOperator **handle);

// Two-mode squeeze operator; `method` is `BRL_SQUEEZE_EXPONENTIAL` or
// `BRL_SQUEEZE_FACTORED`.
//
// # Safety
// `handle` must be valid for writes.
enum BrlStatus brl_fock_squeeze_operator(double r,
                                         size_t n_max,
                                         uint32_t method,
                                         struct BrlFockOperator **handle);

// Hilbert-space dimension `(n_max + 1)²`. Basis state `|n, m⟩` (n photons,
// m phonons) has index `n·(n_max + 1) + m`.
//
// # Safety
// `handle` must be live or null; `dim` must be valid for writes.
enum BrlStatus brl_fock_operator_dim(const struct BrlFockOperator *handle, size_t *dim);

// Ascending eigenvalues of a Hermitian operator. `len` must be at least the
// dimension, otherwise `BUFFER_TOO_SMALL` is returned and nothing is written.
//
// # Safety
// `handle` must be live or null; `eigenvalues` must be valid for
// `len` writes.
enum BrlStatus brl_fock_operator_eigenvalues(const struct BrlFockOperator *handle,
                                             double *eigenvalues,
                                             size_t len);

// `exp(−iHt) ψ` for a Hermitian operator `H`. Input and output states are
// split into real and imaginary parts of length `len`, which must equal the
// dimension. Output buffers may alias the inputs.
//
// # Safety
// `handle` must be live or null; each buffer must be valid for
// `len` elements.
enum BrlStatus brl_fock_operator_evolve(const struct BrlFockOperator *handle,
                                        const double *psi_re,
                                        const double *psi_im,
                                        size_t len,
                                        double t,
                                        double *out_re,
                                        double *out_im);

// Releases a handle. Null is ignored.
//
// # Safety
// `handle` must be null or not yet freed.
void brl_fock_operator_free(struct BrlFockOperator *handle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRILLOUIN_H */
