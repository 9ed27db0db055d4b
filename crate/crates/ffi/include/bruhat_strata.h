#ifndef BRUHAT_STRATA_H
#define BRUHAT_STRATA_H

#pragma once

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BsStatus {
  BS_STATUS_OK = 0,
  BS_STATUS_VERIFICATION_FAILED = 1,
  BS_STATUS_INVALID_INPUT = 2,
  BS_STATUS_BOUND_EXCEEDED = 3,
  BS_STATUS_NULL_POINTER = 4,
  BS_STATUS_INTERNAL = 5,
} BsStatus;

/**
 * A computed stratification atlas.
 */
typedef struct BsAtlas BsAtlas;

/**
 * A validated input case.
 */
typedef struct BsCase BsCase;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a JSON case document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BsStatus bs_case_from_json(const char *json, struct BsCase **out);

/**
 * Expands a named preset such as `siegel:3` or `gu:2,1:inert`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BsStatus bs_case_from_preset(const char *name, struct BsCase **out);

/**
 * # Safety
 * `case` must be null or a handle from `bs_case_from_*` not yet freed.
 */
void bs_case_free(struct BsCase *case_);

/**
 * Builds the atlas of a case.
 *
 * # Safety
 * `case` must be a live case handle and `out` a valid pointer.
 */
enum BsStatus bs_atlas_build(const struct BsCase *case_, struct BsAtlas **out);

/**
 * # Safety
 * `atlas` must be null or a handle from `bs_atlas_build` not yet freed.
 */
void bs_atlas_free(struct BsAtlas *atlas);

/**
 * Number of strata, or 0 for a null handle.
 *
 * # Safety
 * `atlas` must be null or a live atlas handle.
 */
size_t bs_atlas_stratum_count(const struct BsAtlas *atlas);

/**
 * Dimension of stratum `id`.
 *
 * # Safety
 * `atlas` must be a live atlas handle and `out` a valid pointer.
 */
enum BsStatus bs_atlas_stratum_dim(const struct BsAtlas *atlas, size_t id, size_t *out);

/**
 * Number of Ekedahl-Oort strata contained in stratum `id`.
 *
 * # Safety
 * `atlas` must be a live atlas handle and `out` a valid pointer.
 */
enum BsStatus bs_atlas_stratum_eo_count(const struct BsAtlas *atlas, size_t id, size_t *out);

/**
 * Dimension of the whole special fiber.
 *
 * # Safety
 * `atlas` must be a live atlas handle and `out` a valid pointer.
 */
enum BsStatus bs_atlas_moduli_dim(const struct BsAtlas *atlas, size_t *out);

/**
 * Whether the ordinary locus is non-empty.
 *
 * # Safety
 * `atlas` must be a live atlas handle and `out` a valid pointer.
 */
enum BsStatus bs_atlas_mu_ordinary(const struct BsAtlas *atlas, bool *out);

/**
 * The atlas as a JSON document, or null on failure.
 *
 * # Safety
 * `atlas` must be a live atlas handle.
 */
char *bs_atlas_to_json(const struct BsAtlas *atlas);

/**
 * The Hasse diagram in Graphviz syntax, or null on failure.
 *
 * # Safety
 * `atlas` must be a live atlas handle.
 */
char *bs_atlas_to_dot(const struct BsAtlas *atlas);

/**
 * Re-derives the atlas by brute force. Returns `BS_STATUS_VERIFICATION_FAILED`
 * with the first failing check in the error message if anything disagrees.
 *
 * # Safety
 * `atlas` must be a live atlas handle.
 */
enum BsStatus bs_atlas_verify(const struct BsAtlas *atlas);

/**
 * # Safety
 * `text` must be null or a string returned by this library, not yet freed.
 */
void bs_string_free(char *text);

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *bs_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRUHAT_STRATA_H */
