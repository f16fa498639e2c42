/*
 * flatk - exact computation with flat vector bundles (local systems) on
 * finite 2-complexes: monodromy groups, Schreier/Galois coverings, parallel
 * transport, field and tower descent, and degree-one cohomology.
 *
 * All inputs and outputs are JSON document strings; see the project README
 * for the document formats. Where a document argument is expected, the name
 * of a document previously registered with flatk_load may be passed instead
 * of inline JSON. Output strings are allocated by the library and must be
 * released with flatk_string_free.
 */

#ifndef FLATK_H
#define FLATK_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct flatk_session flatk_session;

typedef enum {
    FLATK_OK = 0,
    FLATK_ERR_DOMAIN = 1, /* typed domain error: message reads "Code: detail" */
    FLATK_ERR_PARSE = 2,  /* malformed document, field spec, or argument */
    FLATK_ERR_USAGE = 3   /* invalid call (null pointer, no session) */
} flatk_status;

const char* flatk_version(void);

flatk_session* flatk_session_new(void);
void flatk_session_free(flatk_session* s);

/* Last error text for this session; owned by the session and valid until the
 * next library call that uses it. */
const char* flatk_last_error(const flatk_session* s);

void flatk_string_free(char* s);

/* Register a named JSON document that later calls may reference by name. */
int flatk_load(flatk_session* s, const char* name, const char* json_text);

/* base spaces */
int flatk_space_validate(flatk_session* s, const char* space, char** out);
int flatk_space_present(flatk_session* s, const char* space, char** out);

/* local systems */
int flatk_locsys_check(flatk_session* s, const char* locsys, char** out);
int flatk_locsys_trivial(flatk_session* s, const char* locsys, char** out);
int flatk_locsys_monodromy(flatk_session* s, const char* locsys, long cap, char** out);
int flatk_locsys_iso(flatk_session* s, const char* a, const char* b, long trials,
                     unsigned long seed, char** out);
int flatk_locsys_sections(flatk_session* s, const char* locsys, char** out);

/* coverings */
int flatk_cover_build(flatk_session* s, const char* spec, char** out);
int flatk_cover_decompose(flatk_session* s, const char* spec, char** out);
int flatk_cover_pullback(flatk_session* s, const char* locsys, const char* spec, char** out);
int flatk_cover_pushforward(flatk_session* s, const char* cocycle_on_total, const char* spec,
                            char** out);
int flatk_cover_transport(flatk_session* s, const char* locsys, const char* spec, char** out);
int flatk_cover_exactseq(flatk_session* s, const char* locsys, const char* spec, char** out);

/* descent */
int flatk_descend_field(flatk_session* s, const char* cocycle, const char* trivialization,
                        char** out);
int flatk_descend_modp(flatk_session* s, const char* locsys, long p, long cap, char** out);
int flatk_descend_tower_level(flatk_session* s, const char* tower, const char* locsys, long level,
                              char** out);
int flatk_descend_survival(flatk_session* s, const char* tower, long bound, char** out);

/* cohomology */
int flatk_cohom_h1(flatk_session* s, const char* space, const char* field, char** out);
int flatk_cohom_homga(flatk_session* s, const char* space, const char* field, char** out);
int flatk_cohom_classes(flatk_session* s, const char* space, const char* field, int rank, long cap,
                        char** out);

#ifdef __cplusplus
}
#endif

#endif /* FLATK_H */
