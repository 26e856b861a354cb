#ifndef QUANTUM_INSPECTION_H
#define QUANTUM_INSPECTION_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QiComponentKind {
  QI_COMPONENT_KIND_POINT = 0,
  QI_COMPONENT_KIND_SEGMENT = 1,
  QI_COMPONENT_KIND_FULL_SQUARE = 2,
} QiComponentKind;

typedef enum QiPlayer {
  QI_PLAYER_EMPLOYER = 0,
  QI_PLAYER_WORKER = 1,
} QiPlayer;

typedef enum QiStatus {
  QI_STATUS_OK = 0,
  QI_STATUS_NULL_POINTER = 1,
  QI_STATUS_INVALID_PARAMETERS = 2,
  QI_STATUS_INVALID_PROFILE = 3,
  QI_STATUS_NOT_NORMALIZED = 4,
  QI_STATUS_INVALID_STATE = 5,
  QI_STATUS_INFEASIBLE_PROGRAM = 6,
  QI_STATUS_CONFIG_PARSE = 7,
  QI_STATUS_INVALID_UTF8 = 8,
  QI_STATUS_OUT_OF_RANGE = 9,
  QI_STATUS_PANIC = 10,
} QiStatus;

/**
 * The equilibrium set of a game and state.
 */
typedef struct QiEquilibria QiEquilibria;

/**
 * A 2x2 payoff game.
 */
typedef struct QiGame QiGame;

/**
 * A normalized two-qubit state.
 */
typedef struct QiState QiState;

/**
 * One equilibrium component as the box `[p_lo, p_hi] x [q_lo, q_hi]`.
 */
typedef struct QiComponent {
  enum QiComponentKind kind;
  double p_lo;
  double p_hi;
  double q_lo;
  double q_hi;
} QiComponent;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the
 * library and valid until the next failing call on the same thread.
 */
const char *qi_last_error_message(void);

/**
 * Builds the inspection game from created wealth `v`, work cost `g`,
 * inspection cost `h` and wage `w`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QiStatus qi_game_new_inspection(double v, double g, double h, double w, struct QiGame **out);

/**
 * Builds a game from eight payoffs `[A, B]` per outcome, in the order
 * IW, IS, NW, NS.
 *
 * # Safety
 * `cells` must point to 8 doubles and `out` must be valid.
 */
enum QiStatus qi_game_new_matrix(const double *cells, struct QiGame **out);

/**
 * # Safety
 * `game` must come from a `qi_game_new_*` call, or be null.
 */
void qi_game_free(struct QiGame *game);

/**
 * Builds a state from 8 doubles: `re, im` for IW, IS, NW, NS.
 *
 * # Safety
 * `amplitudes` must point to 8 doubles and `out` must be valid.
 */
enum QiStatus qi_state_new(const double *amplitudes, struct QiState **out);

/**
 * # Safety
 * `state` must come from `qi_state_new`, or be null.
 */
void qi_state_free(struct QiState *state);

/**
 * Expected payoffs of both players at `(p, q)`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum QiStatus qi_quantum_payoff(const struct QiGame *game,
                                const struct QiState *state,
                                double p,
                                double q,
                                double *payoff_a,
                                double *payoff_b);

/**
 * Writes `alpha, beta, gamma, delta` of `alpha*p*q + beta*p + gamma*q + delta`
 * for one player into `out[0..4]`.
 *
 * # Safety
 * `out` must point to space for 4 doubles; other pointers must be valid.
 */
enum QiStatus qi_bilinear_coefficients(const struct QiGame *game,
                                       const struct QiState *state,
                                       enum QiPlayer who,
                                       double *out);

/**
 * # Safety
 * All pointers must be valid.
 */
enum QiStatus qi_find_equilibria(const struct QiGame *game,
                                 const struct QiState *state,
                                 struct QiEquilibria **out);

/**
 * # Safety
 * All pointers must be valid.
 */
enum QiStatus qi_equilibria_component_count(const struct QiEquilibria *equilibria, size_t *count);

/**
 * # Safety
 * All pointers must be valid.
 */
enum QiStatus qi_equilibria_component(const struct QiEquilibria *equilibria,
                                      size_t index,
                                      struct QiComponent *out);

/**
 * # Safety
 * `equilibria` must come from `qi_find_equilibria`, or be null.
 */
void qi_equilibria_free(struct QiEquilibria *equilibria);

/**
 * Runs a JSON scenario and writes the JSON report to `*report`.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string and `report` valid.
 */
enum QiStatus qi_run_scenario_json(const char *config_json, double tolerance, char **report);

/**
 * Runs the built-in reference battery. `samples == 0` keeps the default
 * sample count. `*all_pass` is set to whether every item passed.
 *
 * # Safety
 * `report` and `all_pass` must be valid.
 */
enum QiStatus qi_reproduce_json(uint64_t seed,
                                size_t samples,
                                double tolerance,
                                char **report,
                                bool *all_pass);

/**
 * # Safety
 * `text` must come from this library, or be null.
 */
void qi_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUANTUM_INSPECTION_H */
