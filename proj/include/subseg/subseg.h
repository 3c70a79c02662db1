/* Copyright 2026 The Subseg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Subword segmentation toolkit: C interface.
 *
 * Conventions:
 *   - Every fallible function returns a subseg_status; SUBSEG_OK is 0.
 *   - On failure, subseg_last_error() describes the problem. The message
 *     is thread-local and valid until the next failing call on the same
 *     thread.
 *   - Strings returned through char** are NUL-terminated UTF-8 owned by
 *     the caller; release them with subseg_string_free. Arrays returned
 *     through double** are released with subseg_doubles_free.
 *   - Objects created through *_load / *_learn / *_builtin calls are
 *     released with their matching *_free function. Passing NULL to a
 *     *_free function is a no-op.
 *   - A NULL or empty marker disables the reserved-token check on corpus
 *     loading; elsewhere the marker must be non-empty.
 */

#ifndef SUBSEG_SUBSEG_H_
#define SUBSEG_SUBSEG_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SUBSEG_VERSION_MAJOR 0
#define SUBSEG_VERSION_MINOR 1
#define SUBSEG_VERSION_PATCH 0

typedef enum subseg_status {
  SUBSEG_OK = 0,
  SUBSEG_ERR_IO = 1,
  SUBSEG_ERR_UTF8 = 2,
  SUBSEG_ERR_INVALID_ARGUMENT = 3,
  SUBSEG_ERR_PARSE = 4,
  SUBSEG_ERR_ALIGNMENT = 5,
  SUBSEG_ERR_DEGENERATE = 6,
  SUBSEG_ERR_UNSUPPORTED = 7,
  SUBSEG_ERR_INTERNAL = 8
} subseg_status;

const char* subseg_version(void);
const char* subseg_last_error(void);
void subseg_string_free(char* s);
void subseg_doubles_free(double* values);

/* ------------------------------------------------------------------ */
/* Corpus: one sentence per line, whitespace-separated tokens.         */

typedef struct subseg_corpus subseg_corpus;

/* normalize_nfc != 0 applies Unicode NFC to every line on load. */
subseg_status subseg_corpus_load(const char* path, int normalize_nfc,
                                 const char* marker, subseg_corpus** out);
subseg_status subseg_corpus_from_text(const char* text, int normalize_nfc,
                                      const char* marker, subseg_corpus** out);
void subseg_corpus_free(subseg_corpus* corpus);

size_t subseg_corpus_line_count(const subseg_corpus* corpus);
size_t subseg_corpus_token_count(const subseg_corpus* corpus);

/* One line per sentence, tokens joined by single spaces, LF terminated. */
subseg_status subseg_corpus_text(const subseg_corpus* corpus, char** out_text);
subseg_status subseg_corpus_write(const subseg_corpus* corpus,
                                  const char* path);

/* Frequency table, one "unit<TAB>count" row per line, sorted by count
 * descending then unit ascending. char_level != 0 counts characters. */
subseg_status subseg_corpus_vocab(const subseg_corpus* corpus, int char_level,
                                  char** out_tsv);

/* ------------------------------------------------------------------ */
/* BPE models.                                                         */

typedef struct subseg_bpe_model subseg_bpe_model;
typedef struct subseg_translit subseg_translit;

subseg_status subseg_bpe_learn(const subseg_corpus* corpus, size_t num_merges,
                               subseg_bpe_model** out);

/* Learns until the distinct-subword count of the segmented training text
 * first reaches target_vocab. achieved, below_alphabet, and exhausted may
 * be NULL. */
subseg_status subseg_bpe_match_merges(const subseg_corpus* corpus,
                                      size_t target_vocab,
                                      subseg_bpe_model** out, size_t* achieved,
                                      int* below_alphabet, int* exhausted);

/* mapping may be NULL: the sides then must share enough characters. */
subseg_status subseg_bpe_learn_joint(const subseg_corpus* source,
                                     const subseg_corpus* target,
                                     size_t num_merges,
                                     const subseg_translit* mapping,
                                     double overlap_threshold,
                                     subseg_bpe_model** out);

subseg_status subseg_bpe_load(const char* path, subseg_bpe_model** out);
subseg_status subseg_bpe_save(const subseg_bpe_model* model,
                              const char* path);
size_t subseg_bpe_num_merges(const subseg_bpe_model* model);
size_t subseg_bpe_alphabet_size(const subseg_bpe_model* model);

/* Subwords of one word, joined by single spaces. */
subseg_status subseg_bpe_apply_word(const subseg_bpe_model* model,
                                    const char* word, char** out_line);
void subseg_bpe_free(subseg_bpe_model* model);

/* ------------------------------------------------------------------ */
/* Script inventories and orthographic syllables.                      */

typedef struct subseg_script subseg_script;

subseg_status subseg_script_builtin(const char* name, subseg_script** out);
subseg_status subseg_script_load(const char* path, subseg_script** out);
/* Builtin script by name, or a spec file when the name is a path. */
subseg_status subseg_script_resolve(const char* name_or_path,
                                    subseg_script** out);
/* Newline-joined list of builtin script names. */
subseg_status subseg_script_builtin_names(char** out_names);
/* Spec file text for a builtin script. */
subseg_status subseg_script_dump(const char* name, char** out_text);
void subseg_script_free(subseg_script* script);

/* Syllables of one word, joined by single spaces. */
subseg_status subseg_syllabify_word(const subseg_script* script,
                                    const char* word, char** out_line);
/* Syllables of every token on the line, all joined by single spaces. */
subseg_status subseg_syllabify_line(const subseg_script* script,
                                    const char* line, char** out_line);

/* ------------------------------------------------------------------ */
/* Segmentation and the boundary-marker codec.                         */
/* scheme is "char", "os" (needs script), or "bpe" (needs model).      */

subseg_status subseg_segment_corpus(const subseg_corpus* corpus,
                                    const char* scheme,
                                    const subseg_bpe_model* model,
                                    const subseg_script* script,
                                    const char* marker, subseg_corpus** out);
subseg_status subseg_segment_line(const char* line, const char* scheme,
                                  const subseg_bpe_model* model,
                                  const subseg_script* script,
                                  const char* marker, char** out_line);
subseg_status subseg_desegment_corpus(const subseg_corpus* corpus,
                                      const char* marker,
                                      subseg_corpus** out);
subseg_status subseg_desegment_line(const char* line, const char* marker,
                                    char** out_line);

/* ------------------------------------------------------------------ */
/* Transliteration between same-size script blocks.                    */

subseg_status subseg_translit_builtin(const char* from, const char* to,
                                      subseg_translit** out);
/* Adds "U+XXXX U+YYYY" overrides from a file; later entries win. */
subseg_status subseg_translit_add_exceptions(subseg_translit* table,
                                             const char* path);
void subseg_translit_free(subseg_translit* table);

/* stats, when non-NULL, receives {offset_mapped, exceptions_applied,
 * placeholders_emitted, unassigned_preserved, passed_through}. */
subseg_status subseg_translit_text(const subseg_translit* table,
                                   const char* text, char** out_text,
                                   uint64_t stats[5]);
subseg_status subseg_translit_corpus(const subseg_translit* table,
                                     const subseg_corpus* corpus,
                                     subseg_corpus** out, uint64_t stats[5]);
/* Fraction of corpus characters inside the source block. */
subseg_status subseg_translit_mappable_fraction(const subseg_translit* table,
                                                const subseg_corpus* corpus,
                                                double* out_fraction);

/* ------------------------------------------------------------------ */
/* Similarity.                                                         */

/* Longest-common-subsequence ratio in characters; errors when both
 * strings are empty. */
subseg_status subseg_lcsr(const char* a, const char* b, double* out);

/* Sentence-level LCSR between the sides of a parallel corpus. mapping may
 * be NULL; otherwise the target side is transliterated first.
 * out_values receives one entry per line (NaN where both sides are
 * empty); mean, compared, skipped, truncated may be NULL. */
subseg_status subseg_corpus_lcsr(const subseg_corpus* source,
                                 const subseg_corpus* target,
                                 const subseg_translit* mapping,
                                 double** out_values, size_t* out_count,
                                 double* mean, size_t* compared,
                                 size_t* skipped, size_t* truncated);

subseg_status subseg_pearson(const double* xs, const double* ys, size_t n,
                             double* out_r);

/* Pearson correlation between LCSR(source, reference) and
 * LCSR(hypothesis, reference) across sentences. */
subseg_status subseg_correlate(const subseg_corpus* source,
                               const subseg_corpus* reference,
                               const subseg_corpus* hypothesis, double* out_r,
                               size_t* out_points);

/* ------------------------------------------------------------------ */
/* Evaluation.                                                         */

/* soft != 0 scores with partial n-gram credit gated at threshold.
 * precisions, when non-NULL, must hold max_n doubles. brevity_penalty,
 * hyp_len, ref_len may be NULL. */
subseg_status subseg_bleu(const subseg_corpus* hypotheses,
                          const subseg_corpus* references, int max_n, int soft,
                          double threshold, double* out_score,
                          double* precisions, double* brevity_penalty,
                          uint64_t* hyp_len, uint64_t* ref_len);

/* Paired bootstrap over sentences; identical seeds reproduce identical
 * results on every platform. num_samples must be at least 100.
 * score_a, score_b, mean_delta, opposing may be NULL. */
subseg_status subseg_bootstrap(const subseg_corpus* system_a,
                               const subseg_corpus* system_b,
                               const subseg_corpus* references, int max_n,
                               int soft, double threshold,
                               uint64_t num_samples, uint64_t seed,
                               double* out_p_value, double* score_a,
                               double* score_b, double* mean_delta,
                               uint64_t* opposing);

/* ------------------------------------------------------------------ */
/* Experiment pipeline.                                                */

/* Runs one experiment config ('key = value' lines; see the project
 * README for the key set) and returns the manifest JSON. */
subseg_status subseg_pipeline_run_file(const char* config_path,
                                       char** out_manifest_json);
subseg_status subseg_pipeline_run_text(const char* config_text,
                                       char** out_manifest_json);

/* Runs every config in config_dir; writes and returns a summary TSV.
 * output_tsv, ref_path, and hyp_dir may be NULL. */
subseg_status subseg_sweep(const char* config_dir, const char* output_tsv,
                           const char* ref_path, const char* hyp_dir,
                           char** out_tsv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SUBSEG_SUBSEG_H_ */
