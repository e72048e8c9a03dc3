/* lodefix — search-based repair engine for Lode Runner tile levels.
 *
 * C API over the C++ core: opaque handles, status-code returns, and owned
 * strings released with lfx_string_free(). All functions are thread-safe as
 * long as each handle is used from one thread at a time; lfx_last_error()
 * is thread-local.
 */
#ifndef LODEFIX_H
#define LODEFIX_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define LFX_VERSION "1.0.0"

typedef enum lfx_status {
    LFX_OK = 0,
    LFX_ERR_BAD_DIMENSIONS = 1,  /* level text is not 22 lines x 32 chars */
    LFX_ERR_BAD_CHAR = 2,        /* unknown tile character */
    LFX_ERR_BAD_CARDINALITY = 3, /* player count != 1 or no gold */
    LFX_ERR_NO_EMPTY_TILE = 4,
    LFX_ERR_BAND_UNREACHABLE = 5,
    LFX_ERR_BAD_ARGUMENT = 6,
    LFX_ERR_IO = 7,
    LFX_ERR_INTERNAL = 8
} lfx_status;

typedef struct lfx_level lfx_level;
typedef struct lfx_search_result lfx_search_result;
typedef struct lfx_archive lfx_archive;

const char* lfx_version(void);
const char* lfx_status_name(lfx_status status);

/* Detail message for the most recent failure on this thread ("" if none). */
const char* lfx_last_error(void);

void lfx_string_free(char* text);

/* ---- levels ------------------------------------------------------------ */

/* Text format: 22 lines of 32 chars, LF endings, charset
 * '.'=empty 'b'=brick 'B'=solid brick '-'=rope '#'=ladder
 * 'G'=gold 'E'=enemy 'M'=player. */
lfx_status lfx_level_parse(const char* text, lfx_level** out);
lfx_status lfx_level_load(const char* path, lfx_level** out);
lfx_status lfx_level_save(const lfx_level* level, const char* path);
lfx_status lfx_level_to_text(const lfx_level* level, char** out_text);
void lfx_level_free(lfx_level* level);

int lfx_level_width(void);  /* 32 */
int lfx_level_height(void); /* 22 */
char lfx_level_tile_at(const lfx_level* level, int col, int row);
int lfx_level_hamming(const lfx_level* a, const lfx_level* b);

/* ---- evaluation ---------------------------------------------------------*/

typedef struct lfx_eval_report {
    double playability; /* min(1, (gold_collect + explored/704) / gold_total) */
    double similarity;  /* vs reference (1.0 when reference is NULL) */
    double total_fitness;
    int playable; /* 1 iff every gold is reachable */
    int gold_collect;
    int gold_total;
    int tiles_explored;
} lfx_eval_report;

lfx_status lfx_evaluate(const lfx_level* level, const lfx_level* reference,
                        lfx_eval_report* out);

/* ---- repair ------------------------------------------------------------ */

typedef struct lfx_repair_params {
    const char* algorithm; /* "rs" | "hc" | "es" | "me" */
    const char* level_id;  /* optional; used in the run record */
    int64_t budget;        /* evaluations (one flood fill each) */
    uint64_t seed;
    int mu;
    int lambda;
    int init_count;
    int m_max;
    int count_init_evals; /* ES/ME: initial population consumes budget */
    int64_t curve_stride;
} lfx_repair_params;

/* Defaults: es, budget 200000, seed 0, mu=lambda=50, init_count 100,
 * m_max 10, counted initialization, stride 1000. */
void lfx_repair_params_init(lfx_repair_params* params);

lfx_status lfx_repair(const lfx_level* start, const lfx_repair_params* params,
                      lfx_search_result** out);

lfx_status lfx_result_best_level(const lfx_search_result* result, lfx_level** out);
double lfx_result_best_fitness(const lfx_search_result* result);
int lfx_result_success(const lfx_search_result* result);
int lfx_result_changes(const lfx_search_result* result);
int64_t lfx_result_evals_used(const lfx_search_result* result);
int64_t lfx_result_first_success_eval(const lfx_search_result* result);
int lfx_result_generations(const lfx_search_result* result);
/* Run record as a single JSON line (curve samples included). */
lfx_status lfx_result_record_json(const lfx_search_result* result, char** out_text);
/* ME archive / ES shadow archive; LFX_ERR_BAD_ARGUMENT for rs/hc. */
lfx_status lfx_result_archive(const lfx_search_result* result, lfx_archive** out);
void lfx_result_free(lfx_search_result* result);

/* ---- archives ----------------------------------------------------------- */

double lfx_archive_qd_score(const lfx_archive* archive);
double lfx_archive_coverage(const lfx_archive* archive);
int lfx_archive_occupied(const lfx_archive* archive);
/* 9x9 CSV heatmap of cell fitnesses with bin labels; '-' marks empty cells. */
lfx_status lfx_archive_heatmap_csv(const lfx_archive* archive, char** out_text);
void lfx_archive_free(lfx_archive* archive);

/* ---- corruption ---------------------------------------------------------*/

/* Degrades a fully playable level until its gold-reachable ratio falls in
 * [band_lo, band_hi) percent; 30 <= band_lo < band_hi <= 90. */
lfx_status lfx_corrupt(const lfx_level* playable, int band_lo, int band_hi, uint64_t seed,
                       int64_t max_attempts, lfx_level** out);

/* ---- experiments --------------------------------------------------------*/

/* Runs the experiment described by a JSON config file; writes runs.jsonl,
 * aggregate CSV tables and archive heatmaps to its output_dir. */
lfx_status lfx_experiment_run(const char* config_path);

/* Recomputes the aggregate tables from a stored runs.jsonl. output_dir may
 * be NULL to write next to the records. */
lfx_status lfx_report_run(const char* records_dir, const char* output_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LODEFIX_H */
