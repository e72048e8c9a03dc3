#include "lodefix.h"

#include <cstring>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "core/archive.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/level.hpp"
#include "core/search.hpp"

using namespace lodefix;

struct lfx_level {
    Level impl;
};

struct lfx_search_result {
    SearchResult impl;
    std::optional<Archive> archive;
    std::string record_json;
};

struct lfx_archive {
    Archive impl;
};

namespace {

thread_local std::string g_last_error;

lfx_status status_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::BadDimensions: return LFX_ERR_BAD_DIMENSIONS;
    case ErrorCode::BadChar: return LFX_ERR_BAD_CHAR;
    case ErrorCode::BadCardinality: return LFX_ERR_BAD_CARDINALITY;
    case ErrorCode::NoEmptyTile: return LFX_ERR_NO_EMPTY_TILE;
    case ErrorCode::BandUnreachable: return LFX_ERR_BAND_UNREACHABLE;
    case ErrorCode::BadArgument: return LFX_ERR_BAD_ARGUMENT;
    case ErrorCode::Io: return LFX_ERR_IO;
    }
    return LFX_ERR_INTERNAL;
}

// Runs fn(), translating exceptions into status codes + lfx_last_error().
template <typename Fn>
lfx_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        fn();
        return LFX_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LFX_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return LFX_ERR_INTERNAL;
    }
}

char* owned_string(const std::string& text) {
    char* out = static_cast<char*>(::operator new(text.size() + 1, std::nothrow));
    if (!out) return nullptr;
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

lfx_status require(bool ok, const char* message) {
    if (ok) return LFX_OK;
    g_last_error = message;
    return LFX_ERR_BAD_ARGUMENT;
}

} // namespace

extern "C" {

const char* lfx_version(void) { return LFX_VERSION; }

const char* lfx_status_name(lfx_status status) {
    switch (status) {
    case LFX_OK: return "ok";
    case LFX_ERR_BAD_DIMENSIONS: return "bad dimensions";
    case LFX_ERR_BAD_CHAR: return "bad character";
    case LFX_ERR_BAD_CARDINALITY: return "bad cardinality";
    case LFX_ERR_NO_EMPTY_TILE: return "no empty tile";
    case LFX_ERR_BAND_UNREACHABLE: return "band unreachable";
    case LFX_ERR_BAD_ARGUMENT: return "bad argument";
    case LFX_ERR_IO: return "io error";
    case LFX_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* lfx_last_error(void) { return g_last_error.c_str(); }

void lfx_string_free(char* text) { ::operator delete(text); }

lfx_status lfx_level_parse(const char* text, lfx_level** out) {
    if (auto s = require(text && out, "null argument")) return s;
    return guarded([&] { *out = new lfx_level{parse_level(text)}; });
}

lfx_status lfx_level_load(const char* path, lfx_level** out) {
    if (auto s = require(path && out, "null argument")) return s;
    return guarded([&] { *out = new lfx_level{load_level(path)}; });
}

lfx_status lfx_level_save(const lfx_level* level, const char* path) {
    if (auto s = require(level && path, "null argument")) return s;
    return guarded([&] { save_level(level->impl, path); });
}

lfx_status lfx_level_to_text(const lfx_level* level, char** out_text) {
    if (auto s = require(level && out_text, "null argument")) return s;
    return guarded([&] {
        *out_text = owned_string(serialize_level(level->impl));
        if (!*out_text) fail(ErrorCode::Io, "out of memory");
    });
}

void lfx_level_free(lfx_level* level) { delete level; }

int lfx_level_width(void) { return kLevelWidth; }
int lfx_level_height(void) { return kLevelHeight; }

char lfx_level_tile_at(const lfx_level* level, int col, int row) {
    if (!level || col < 0 || col >= kLevelWidth || row < 0 || row >= kLevelHeight) return '\0';
    return tile_to_char(level->impl.at(col, row));
}

int lfx_level_hamming(const lfx_level* a, const lfx_level* b) {
    if (!a || !b) return -1;
    return hamming_distance(a->impl, b->impl);
}

lfx_status lfx_evaluate(const lfx_level* level, const lfx_level* reference,
                        lfx_eval_report* out) {
    if (auto s = require(level && out, "null argument")) return s;
    return guarded([&] {
        const Level& ref = reference ? reference->impl : level->impl;
        const Evaluation ev = evaluate(level->impl, ref);
        out->playability = ev.fitness.playability;
        out->similarity = ev.fitness.similarity;
        out->total_fitness = ev.fitness.total;
        out->playable = ev.fitness.playable;
        out->gold_collect = ev.counts.gold_collect;
        out->gold_total = ev.counts.gold_total;
        out->tiles_explored = ev.counts.tiles_explored;
    });
}

void lfx_repair_params_init(lfx_repair_params* params) {
    if (!params) return;
    params->algorithm = "es";
    params->level_id = nullptr;
    params->budget = 200000;
    params->seed = 0;
    params->mu = 50;
    params->lambda = 50;
    params->init_count = 100;
    params->m_max = 10;
    params->count_init_evals = 1;
    params->curve_stride = 1000;
}

lfx_status lfx_repair(const lfx_level* start, const lfx_repair_params* params,
                      lfx_search_result** out) {
    if (auto s = require(start && params && params->algorithm && out, "null argument")) return s;
    return guarded([&] {
        const auto algo = algo_from_name(params->algorithm);
        if (!algo) {
            fail(ErrorCode::BadArgument,
                 std::string("unknown algorithm: ") + params->algorithm);
        }
        RunParams run;
        run.algo = *algo;
        run.budget.max_evaluations = params->budget;
        run.mu = params->mu;
        run.lambda = params->lambda;
        run.init_count = params->init_count;
        run.mutation.m_max = params->m_max;
        run.options.count_init_evals = params->count_init_evals != 0;
        run.options.curve_stride = params->curve_stride;

        const std::string level_id = params->level_id ? params->level_id : "level";
        RunOutcome outcome = run_single(start->impl, level_id, run, params->seed);

        auto* result = new lfx_search_result;
        result->impl = std::move(outcome.result);
        result->archive = std::move(outcome.archive);
        result->record_json = record_to_json(outcome.record);
        *out = result;
    });
}

lfx_status lfx_result_best_level(const lfx_search_result* result, lfx_level** out) {
    if (auto s = require(result && out, "null argument")) return s;
    return guarded([&] { *out = new lfx_level{result->impl.best}; });
}

double lfx_result_best_fitness(const lfx_search_result* result) {
    return result ? result->impl.best_fitness : 0.0;
}

int lfx_result_success(const lfx_search_result* result) {
    return result && result->impl.success;
}

int lfx_result_changes(const lfx_search_result* result) {
    return result ? result->impl.changes : -1;
}

int64_t lfx_result_evals_used(const lfx_search_result* result) {
    return result ? result->impl.evals_used : 0;
}

int64_t lfx_result_first_success_eval(const lfx_search_result* result) {
    return result ? result->impl.first_success_eval : -1;
}

int lfx_result_generations(const lfx_search_result* result) {
    return result ? result->impl.generations : 0;
}

lfx_status lfx_result_record_json(const lfx_search_result* result, char** out_text) {
    if (auto s = require(result && out_text, "null argument")) return s;
    return guarded([&] {
        *out_text = owned_string(result->record_json);
        if (!*out_text) fail(ErrorCode::Io, "out of memory");
    });
}

lfx_status lfx_result_archive(const lfx_search_result* result, lfx_archive** out) {
    if (auto s = require(result && out, "null argument")) return s;
    return guarded([&] {
        if (!result->archive) {
            fail(ErrorCode::BadArgument, "this algorithm keeps no archive");
        }
        *out = new lfx_archive{*result->archive};
    });
}

void lfx_result_free(lfx_search_result* result) { delete result; }

double lfx_archive_qd_score(const lfx_archive* archive) {
    return archive ? archive->impl.qd_score() : 0.0;
}

double lfx_archive_coverage(const lfx_archive* archive) {
    return archive ? archive->impl.coverage() : 0.0;
}

int lfx_archive_occupied(const lfx_archive* archive) {
    return archive ? archive->impl.occupied() : 0;
}

lfx_status lfx_archive_heatmap_csv(const lfx_archive* archive, char** out_text) {
    if (auto s = require(archive && out_text, "null argument")) return s;
    return guarded([&] {
        std::ostringstream buf;
        export_heatmap(archive->impl, buf);
        *out_text = owned_string(buf.str());
        if (!*out_text) fail(ErrorCode::Io, "out of memory");
    });
}

void lfx_archive_free(lfx_archive* archive) { delete archive; }

lfx_status lfx_corrupt(const lfx_level* playable, int band_lo, int band_hi, uint64_t seed,
                       int64_t max_attempts, lfx_level** out) {
    if (auto s = require(playable && out, "null argument")) return s;
    return guarded([&] {
        Rng rng(seed);
        *out = new lfx_level{corrupt_level(playable->impl, band_lo, band_hi, rng, max_attempts)};
    });
}

lfx_status lfx_experiment_run(const char* config_path) {
    if (auto s = require(config_path != nullptr, "null argument")) return s;
    return guarded([&] { run_experiment(load_experiment_config(config_path)); });
}

lfx_status lfx_report_run(const char* records_dir, const char* output_dir) {
    if (auto s = require(records_dir != nullptr, "null argument")) return s;
    return guarded([&] {
        const auto records = load_records(records_dir);
        write_reports(records, output_dir ? output_dir : records_dir);
    });
}

} // extern "C"
