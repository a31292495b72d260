#ifndef GOTCHA_GOTCHA_H
#define GOTCHA_GOTCHA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GOTCHA_API __declspec(dllexport)
#else
#define GOTCHA_API __attribute__((visibility("default")))
#endif

/* Every fallible call returns a status. On failure a message is available
   from gotcha_last_error() on the calling thread until the next call. */
typedef enum gotcha_status {
  GOTCHA_OK = 0,
  GOTCHA_ERR_VALIDATION = 1,
  GOTCHA_ERR_DUPLICATE_USER = 2,
  GOTCHA_ERR_UNKNOWN_SESSION = 3,
  GOTCHA_ERR_SESSION_EXPIRED = 4,
  GOTCHA_ERR_LOCKED_OUT = 5,
  GOTCHA_ERR_BUDGET_EXCEEDED = 6,
  GOTCHA_ERR_CONTRACT_VIOLATION = 7,
  GOTCHA_ERR_STORE_CORRUPT = 8,
  GOTCHA_ERR_IO = 9,
  GOTCHA_ERR_BIND = 10,
  GOTCHA_ERR_NOT_FOUND = 11,
  GOTCHA_ERR_INTERNAL = 12
} gotcha_status;

typedef struct gotcha_inkblot_set gotcha_inkblot_set;
typedef struct gotcha_auth gotcha_auth;
typedef struct gotcha_server gotcha_server;

GOTCHA_API const char* gotcha_version(void);
GOTCHA_API const char* gotcha_last_error(void);
/* Wire name of a status, e.g. "validation_error". */
GOTCHA_API const char* gotcha_status_name(gotcha_status status);
/* Releases any string or byte buffer returned through an out-parameter. */
GOTCHA_API void gotcha_free(void* p);

/* Permutation combinatorics, 0 <= alpha <= k <= 20. */
GOTCHA_API gotcha_status gotcha_count_close(int k, int alpha, uint64_t* out);
GOTCHA_API gotcha_status gotcha_count_close_upper_bound(int k, int alpha, uint64_t* out);

/* Extract(password, salt) into out_len bytes; out_len * 8 is the seed size. */
GOTCHA_API gotcha_status gotcha_extract(const char* password, const uint8_t* salt, size_t salt_len,
                                        uint8_t* out, size_t out_len);

/* Inkblots I_1..I_k from a hex seed. */
GOTCHA_API gotcha_status gotcha_inkblots_generate(int k, const char* seed_hex,
                                                  gotcha_inkblot_set** out);
GOTCHA_API int gotcha_inkblots_count(const gotcha_inkblot_set* set);
/* PNG of image `index` (1-based). */
GOTCHA_API gotcha_status gotcha_inkblots_png(const gotcha_inkblot_set* set, int index,
                                             uint8_t** png, size_t* png_len);
/* Borrowed RGB8 raster of image `index`, valid until the set is freed. */
GOTCHA_API gotcha_status gotcha_inkblots_raster(const gotcha_inkblot_set* set, int index,
                                                const uint8_t** rgb, int* width, int* height);
GOTCHA_API void gotcha_inkblots_free(gotcha_inkblot_set* set);

/* Authentication engine. config_json uses the keys listed in docs/API.md;
   NULL or "{}" gives an in-memory store with default parameters. */
GOTCHA_API gotcha_status gotcha_auth_open(const char* config_json, gotcha_auth** out);
GOTCHA_API void gotcha_auth_free(gotcha_auth* auth);
GOTCHA_API size_t gotcha_auth_account_count(const gotcha_auth* auth);

GOTCHA_API gotcha_status gotcha_auth_register_begin(gotcha_auth* auth, const char* username,
                                                    const char* password, char** token, int* k);
/* Labels in presentation order. */
GOTCHA_API gotcha_status gotcha_auth_register_complete(gotcha_auth* auth, const char* token,
                                                       const char* const* labels, size_t count);
GOTCHA_API gotcha_status gotcha_auth_register_reject(gotcha_auth* auth, const char* token,
                                                     char** new_token, int* k);
/* PNG of the image at presentation position (1-based) of a live session. */
GOTCHA_API gotcha_status gotcha_auth_session_png(gotcha_auth* auth, const char* token,
                                                 int position, uint8_t** png, size_t* png_len);

/* challenge_json: {"k":..,"labels":[..],"display_order":[..]} with
   display_order listing 1-based label positions in alphabetical order. */
GOTCHA_API gotcha_status gotcha_auth_login_begin(gotcha_auth* auth, const char* username,
                                                 const char* password, char** token,
                                                 char** challenge_json);
/* response[i]: 1-based image index for label position i. */
GOTCHA_API gotcha_status gotcha_auth_login_complete(gotcha_auth* auth, const char* token,
                                                    const int* response, size_t count,
                                                    int* accepted, uint64_t* hash_evaluations);
/* answer[d]: 1-based image index for the d-th label in alphabetical order. */
GOTCHA_API gotcha_status gotcha_auth_login_complete_display(gotcha_auth* auth, const char* token,
                                                            const int* answer, size_t count,
                                                            int* accepted,
                                                            uint64_t* hash_evaluations);

/* HTTP service. Same config keys as gotcha_auth_open plus host, port,
   cors_origin. */
GOTCHA_API gotcha_status gotcha_server_create(const char* config_json, gotcha_server** out);
/* Serves on a background thread; *port receives the bound port. */
GOTCHA_API gotcha_status gotcha_server_start(gotcha_server* server, int* port);
/* Serves on the calling thread until gotcha_server_stop. */
GOTCHA_API gotcha_status gotcha_server_run(gotcha_server* server);
GOTCHA_API void gotcha_server_stop(gotcha_server* server);
GOTCHA_API void gotcha_server_free(gotcha_server* server);

/* Open challenge kit. request_json: {"lo","hi","k","labels"?,"cost"?,"seed"?}.
   Outputs are the public tuple document and the secret document. */
GOTCHA_API gotcha_status gotcha_challenge_generate(const char* request_json, char** tuple_json,
                                                   char** secret_json);
GOTCHA_API gotcha_status gotcha_challenge_verify(const char* tuple_json, const char* secret_json,
                                                 int* valid);
/* result_json: {"found", "password"?, "permutation"?, "hash_calls",
   "hash_calls_performed"}. */
GOTCHA_API gotcha_status gotcha_challenge_solve(const char* tuple_json, uint64_t budget,
                                                unsigned threads, char** result_json);
GOTCHA_API gotcha_status gotcha_challenge_inkblots(const char* password, int k,
                                                   gotcha_inkblot_set** out);

/* Offline-attack simulation; config keys in docs/API.md. */
GOTCHA_API gotcha_status gotcha_attack_sim(const char* config_json, char** report_json,
                                           char** table_text);
GOTCHA_API gotcha_status gotcha_offline_attack_bound(double mu_bits, double c_h, double c_H,
                                               uint64_t dictionary_size, double gamma,
                                               uint64_t human_queries, double* out);
GOTCHA_API gotcha_status gotcha_hosp_economics(double total_bytes, double captcha_bytes,
                                               double human_cost, uint64_t* database_size,
                                               double* full_cost, double* half_cost);

#ifdef __cplusplus
}
#endif

#endif
