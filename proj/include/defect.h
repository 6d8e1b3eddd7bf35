#ifndef DEFECT_H
#define DEFECT_H

#include <stddef.h>

#if defined(_WIN32)
#define DEFECT_API __declspec(dllexport)
#else
#define DEFECT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum defect_status {
  DEFECT_OK = 0,
  DEFECT_VERIFY_FAILED = 1,   /* call succeeded, report has "ok": false */
  DEFECT_INPUT_ERROR = 2,
  DEFECT_INTERNAL_ERROR = 3,
  DEFECT_INVALID_ARGUMENT = 4 /* null handle or out-pointer */
} defect_status;

typedef struct defect_spec defect_spec;
typedef struct defect_torus defect_torus;

DEFECT_API const char* defect_version(void);

/* Message of the last failed call on this thread; "" when none. */
DEFECT_API const char* defect_last_error(void);

/* Frees strings returned through char** out-parameters. */
DEFECT_API void defect_string_free(char* s);

/* Spec documents (JSON text). Schema errors name the offending field. */
DEFECT_API defect_status defect_spec_parse(const char* json, defect_spec** out);
DEFECT_API defect_status defect_spec_load(const char* path, defect_spec** out);
DEFECT_API void defect_spec_free(defect_spec* spec);
/* "isogeny" or "torus"; static storage. */
DEFECT_API const char* defect_spec_kind(const defect_spec* spec);
DEFECT_API defect_status defect_spec_echo(const defect_spec* spec, char** out_json);

/* JSON reports. */
DEFECT_API defect_status defect_classify(const defect_spec* spec, char** out_report);
/* class_index < 0 analyzes every declared class and runs the box search;
   otherwise only that class is analyzed. threads <= 0 means 1. */
DEFECT_API defect_status defect_torus_analyze(const defect_spec* spec, int box, long class_index,
                                              int threads, char** out_report);
/* checks: comma separated subset of voisin,kunneth,lefschetz,oracle. */
DEFECT_API defect_status defect_verify(const defect_spec* spec, const char* checks, int box,
                                       int threads, char** out_report);
/* JSON array of catalog rows, delta descending. */
DEFECT_API defect_status defect_threefold_catalog(char** out_json);

/* Direct torus access. */
DEFECT_API defect_status defect_torus_from_spec(const defect_spec* spec, defect_torus** out);
DEFECT_API void defect_torus_free(defect_torus* torus);
DEFECT_API int defect_torus_dimension(const defect_torus* torus);
DEFECT_API defect_status defect_torus_picard_rank(const defect_torus* torus, int* out);
/* rank of Hom(a, b); both tori must share a field. */
DEFECT_API defect_status defect_torus_hom_rank(const defect_torus* a, const defect_torus* b,
                                               int* out);
/* form: row-major 2n x 2n integer antisymmetric Hodge class, size = 2n. */
DEFECT_API defect_status defect_torus_class_defect(const defect_torus* torus, const long long* form,
                                                   size_t size, int* out_defect);
DEFECT_API defect_status defect_torus_search(const defect_torus* torus, int box, int threads,
                                             int* out_delta, unsigned long long* out_scanned);

#ifdef __cplusplus
}
#endif

#endif
