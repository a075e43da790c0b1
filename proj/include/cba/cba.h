/*
 * C interface to the associative-classification engine.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a cba_status; on
 * failure cba_last_error() describes the problem (thread-local, valid until
 * the next call on the same thread). Strings returned through char** out
 * parameters are heap-allocated and must be released with cba_string_free.
 */
#ifndef CBA_CBA_H
#define CBA_CBA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef CBA_BUILDING_LIBRARY
#    define CBA_API __declspec(dllexport)
#  else
#    define CBA_API __declspec(dllimport)
#  endif
#else
#  define CBA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cba_status {
  CBA_OK = 0,
  CBA_ERR_INPUT = 1,    /* malformed data or violated precondition */
  CBA_ERR_IO = 2,       /* file missing or unreadable */
  CBA_ERR_VERSION = 3,  /* model file written by an incompatible version */
  CBA_ERR_ARGUMENT = 4, /* null handle or out-of-range enum */
  CBA_ERR_INTERNAL = 5
} cba_status;

typedef enum cba_family { CBA_FAMILY_ODM1 = 0, CBA_FAMILY_ODM2 = 1, CBA_FAMILY_TREE = 2 } cba_family;

typedef enum cba_bin_strategy { CBA_BINS_EQUAL_WIDTH = 0, CBA_BINS_EQUAL_FREQUENCY = 1 } cba_bin_strategy;

typedef struct cba_dataset cba_dataset;
typedef struct cba_model cba_model;

typedef struct cba_config {
  cba_family family;
  double minsup;
  double minconf;
  int prune_general;
  int max_depth;
  size_t min_rows_per_node;
  double min_gain;
  size_t nfolds;
  uint64_t seed;
  int plain_folds; /* non-stratified partition: shuffled list, position mod nfolds */
  unsigned jobs;
} cba_config;

/* Identifies a run in emitted reports. Any field may be NULL. */
typedef struct cba_run_info {
  const char* command;
  const char* dataset_path;
  const char* timestamp;
  int include_timing;
} cba_run_info;

CBA_API const char* cba_version(void);
CBA_API const char* cba_last_error(void);
CBA_API void cba_string_free(char* s);

/* Defaults: cba-odm1, minsup 0.15, minconf 0.50, pruning on, depth 7,
   min rows 2, min gain 0, 10 folds, seed 0, stratified, 1 job. */
CBA_API void cba_config_init(cba_config* config);

/* ---- datasets ---- */
CBA_API cba_status cba_dataset_load(const char* path, const char* class_column, cba_dataset** out);
CBA_API cba_status cba_dataset_parse(const char* csv_text, const char* class_column, cba_dataset** out);
CBA_API cba_status cba_dataset_discretize(const cba_dataset* dataset, const char* const* columns, size_t ncolumns,
                                          cba_bin_strategy strategy, int bins, cba_dataset** out);
CBA_API void cba_dataset_free(cba_dataset* dataset);
CBA_API size_t cba_dataset_rows(const cba_dataset* dataset);
CBA_API size_t cba_dataset_attributes(const cba_dataset* dataset);
CBA_API size_t cba_dataset_classes(const cba_dataset* dataset);
CBA_API cba_status cba_dataset_describe(const cba_dataset* dataset, char** out_text);
CBA_API cba_status cba_dataset_to_csv(const cba_dataset* dataset, char** out_csv);

/* ---- rule mining ---- */

/* Class association rules, one per line:
   `IF A=e THEN C=y  sup=3/10 conf=3/4 pass=1 ord=0`. */
CBA_API cba_status cba_mine(const cba_dataset* dataset, double minsup, double minconf, char** out_rules,
                            size_t* out_count);

/* ---- models ---- */
CBA_API cba_status cba_model_train(const cba_dataset* dataset, const cba_config* config, cba_model** out);
CBA_API void cba_model_free(cba_model* model);
CBA_API cba_status cba_model_serialize(const cba_model* model, char** out_text);
CBA_API cba_status cba_model_deserialize(const char* text, cba_model** out);
CBA_API cba_status cba_model_save(const cba_model* model, const char* path);
CBA_API cba_status cba_model_load(const char* path, cba_model** out);
/* Rule list followed by `DEFAULT <class>`. */
CBA_API cba_status cba_model_rules_text(const cba_model* model, char** out_text);
CBA_API size_t cba_model_rule_count(const cba_model* model);
/* Merge audit (cba-odm2 models only; empty string otherwise). */
CBA_API cba_status cba_model_merge_report(const cba_model* model, char** out_text);

/* Predicts each row of a CSV (header required; the class column may be
   absent). Output is the input with a trailing `predicted` column. */
CBA_API cba_status cba_model_predict_csv(const cba_model* model, const char* csv_text, char** out_csv);
/* Predicts one row given parallel arrays of attribute names and values. */
CBA_API cba_status cba_model_predict_row(const cba_model* model, const char* const* names,
                                         const char* const* values, size_t n, char** out_label);

/* ---- decision tree ---- */

/* Indented tree dump followed by a blank line and the leaf rules. */
CBA_API cba_status cba_tree_dump(const cba_dataset* dataset, const cba_config* config, char** out_text);

/* ---- evaluation ---- */

/* Cross-validation report (JSON). */
CBA_API cba_status cba_evaluate(const cba_dataset* dataset, const cba_config* config, const cba_run_info* run,
                                char** out_json);
/* Runs every scenario (minsups[i], minconfs[i]) on every *.csv in `dir`,
   sorted by file name. nscenarios == 0 selects the four defaults. */
CBA_API cba_status cba_bench_dir(const char* dir, const char* class_column, const cba_config* config,
                                 const double* minsups, const double* minconfs, size_t nscenarios,
                                 const cba_run_info* run, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* CBA_CBA_H */
