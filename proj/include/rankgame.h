/* Copyright 2026 The rankgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the rankgame analysis core.
 *
 * Games are opaque handles created from JSON configurations. Analyses
 * return machine-readable reports as heap-allocated strings (JSON or CSV)
 * that the caller releases with rg_string_free. Every entry point returns
 * an rg_status; on failure rg_last_error() describes the problem for the
 * calling thread.
 */

#ifndef RANKGAME_H
#define RANKGAME_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rg_status {
  RG_OK = 0,
  RG_ERROR_INVALID_ARGUMENT = 1, /* bad parameters or null pointers */
  RG_ERROR_PARSE = 2,            /* malformed JSON/CSV input */
  RG_ERROR_DATA = 3,             /* well-formed input with unusable content */
  RG_ERROR_PRECONDITION = 4,     /* theorem hypotheses not verified */
  RG_ERROR_NOT_STABILIZABLE = 5, /* no finite stabilizing TbT level */
  RG_ERROR_INTERNAL = 6
} rg_status;

typedef struct rg_game rg_game;

/* Library version string, e.g. "0.1.0". */
const char* rg_version(void);

/* Message describing this thread's most recent failure; empty on success. */
const char* rg_last_error(void);

/* Releases a string returned by any analysis call. NULL is allowed. */
void rg_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Game lifecycle                                                     */

/* Parses a JSON game configuration. When lenient is nonzero, unknown
 * fields are ignored instead of rejected. */
rg_status rg_game_from_json(const char* config_json, int lenient,
                            rg_game** out_game);

void rg_game_free(rg_game* game);

int rg_game_num_players(const rg_game* game);

/* Normalized JSON form of the game's configuration. */
rg_status rg_game_to_json(const rg_game* game, char** out_json);

/* ------------------------------------------------------------------ */
/* Analyses                                                           */

/* Equilibrium verdict for the induced follower game. The score model must
 * pass the sampled regularity check unless assume_regular is nonzero.
 * out_is_all_zero_pne (optional) receives 1 for AllZeroPNE, 0 for NoPNE. */
rg_status rg_analyze(const rg_game* game, int assume_regular,
                     int* out_is_all_zero_pne, char** out_report_json);

/* Stabilizing tune-before-test thresholds per adjacent pair plus the
 * global level. out_all_stabilizable (optional) receives 0 when some pair
 * admits no finite stabilizing level, in which case the report is still
 * produced and RG_ERROR_NOT_STABILIZABLE is returned. Includes the
 * designer block when the config carries designer preferences. When
 * rule_of_thumb_only is nonzero the exact bisection is skipped and only
 * pair statistics and the power-law rules of thumb are reported. */
rg_status rg_threshold(const rg_game* game, int rule_of_thumb_only,
                       int* out_all_stabilizable, char** out_report_json);

/* Power-law rule of thumb from pair statistics alone. */
rg_status rg_rule_of_thumb(double e_req_zero, double gamma, double rho,
                           char** out_report_json);

/* Leaderboard-climbing cost curve over a sorted TbT grid, as CSV. */
rg_status rg_climbing_curve(const rg_game* game, const double* tbt_grid,
                            size_t grid_len, char** out_csv);

/* Best-response dynamics trace as CSV. options_json fields (all optional):
 *   start      "zero" | "random" | array of efforts   (default "zero")
 *   mover_rule "round-robin" | "best-gain-first"      (default round-robin)
 *   grid_step  positive number                        (default 0.01)
 *   max_steps  positive integer                       (default 10000)
 *   seed       integer, used only for random starts   (default 0)
 */
rg_status rg_simulate(const rg_game* game, const char* options_json,
                      char** out_trace_csv);

/* Fits power-law trajectories from CSV text (header model_id,steps,score)
 * and derives adjacent-pair statistics. options_json fields (optional):
 *   lower          number in [0, 1)          (default: chance_level or 0)
 *   upper          number in (lower, 1]      (default 1)
 *   chance_level   number, fallback for lower
 *   estimate_upper true to grid-search the upper asymptote per model
 */
rg_status rg_fit_trajectories(const char* csv_text, const char* options_json,
                              char** out_report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RANKGAME_H */
