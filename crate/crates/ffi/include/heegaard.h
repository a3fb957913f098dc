#ifndef HEEGAARD_H
#define HEEGAARD_H

/* Generated by cbindgen from heegaard-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every API call.
 */
typedef enum HgStatus {
  /**
   * Success; report text, if any, is a pass.
   */
  HG_STATUS_OK = 0,
  /**
   * The input text did not parse; see `hg_last_error`.
   */
  HG_STATUS_PARSE_ERROR = 1,
  /**
   * The model fails validation; the report lists the violations.
   */
  HG_STATUS_INVALID_MODEL = 2,
  /**
   * The analysis could not finish or found violations; the report or
   * `hg_last_error` has details.
   */
  HG_STATUS_ANALYSIS_ERROR = 3,
  /**
   * A null or malformed argument.
   */
  HG_STATUS_ARG_ERROR = 4,
} HgStatus;

/**
 * Opaque handle to a parsed splitting model.
 */
typedef struct HgModel HgModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * A copy of the last error message on this thread, or NULL. Free it with
 * `hg_string_free`.
 */
char *hg_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a pointer previously returned by a function of this
 * library and not yet freed.
 */
void hg_string_free(char *s);

/**
 * Release a model handle.
 *
 * # Safety
 * `model` must be NULL or a handle previously returned by this library and
 * not yet freed.
 */
void hg_model_free(struct HgModel *model);

/**
 * Parse a model from its line-oriented text form.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HgStatus hg_parse(const char *text, struct HgModel **out);

/**
 * Generate a random valid model from a seeded recipe.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HgStatus hg_generate(uint32_t genus, uint32_t disks, uint64_t seed, struct HgModel **out);

/**
 * Copy of the model with all missing meridian disks added.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum HgStatus hg_synthesize_meridians(const struct HgModel *model, struct HgModel **out);

/**
 * Ambient genus of the model.
 *
 * # Safety
 * `model` must be a live handle.
 */
uint32_t hg_genus(const struct HgModel *model);

/**
 * Number of declared disks.
 *
 * # Safety
 * `model` must be a live handle.
 */
uint32_t hg_disk_count(const struct HgModel *model);

/**
 * Canonical text form of the model; reparses to an identical model.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum HgStatus hg_serialize(const struct HgModel *model, char **out);

/**
 * Validation report: rules R1-R7. `Ok` means valid.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum HgStatus hg_validate(const struct HgModel *model, char **out);

/**
 * Weak reduction report for one pair; `raw` selects the preweak levels.
 *
 * # Safety
 * All pointers must be valid; strings NUL-terminated.
 */
enum HgStatus hg_reduce(const struct HgModel *model,
                        const char *v_id,
                        const char *w_id,
                        bool raw,
                        char **out);

/**
 * Ten-type of one weak reducing pair.
 *
 * # Safety
 * All pointers must be valid; strings NUL-terminated.
 */
enum HgStatus hg_classify(const struct HgModel *model,
                          const char *v_id,
                          const char *w_id,
                          char **out);

/**
 * Ten-types of every weak reducing pair.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum HgStatus hg_classify_all(const struct HgModel *model, char **out);

/**
 * Cluster decomposition with the S1-S5 structure checks.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum HgStatus hg_clusters(const struct HgModel *model, bool synthesize_meridians, char **out);

/**
 * Components of the side-crossing subset of the disk complex.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum HgStatus hg_components(const struct HgModel *model, char **out);

/**
 * Criticality verdict with partition or witness face.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum HgStatus hg_criticality(const struct HgModel *model, bool synthesize_meridians, char **out);

/**
 * Genus-3 component/cluster table with descriptor grouping.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum HgStatus hg_phi(const struct HgModel *model, bool synthesize_meridians, char **out);

/**
 * Independent recomputation of clusters and thin genera; `Ok` means the
 * decomposition matches.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum HgStatus hg_oracle_check(const struct HgModel *model, bool synthesize_meridians, char **out);

/**
 * Plain-text node/edge/face export of the disk complex.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum HgStatus hg_export_graph(const struct HgModel *model, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HEEGAARD_H */
