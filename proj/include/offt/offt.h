#ifndef OFFT_OFFT_H
#define OFFT_OFFT_H

/* C interface to the optical FFT simulator.
 *
 * Handles are opaque and owned by the caller: every *_create / *_build /
 * *_load / *_run has a matching *_destroy. Strings returned through char**
 * are allocated by the library and released with offt_string_free.
 * Every call returns an offt_status; on failure offt_last_error() holds a
 * message for the calling thread until its next failing call. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OFFT_API __declspec(dllexport)
#else
#define OFFT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum offt_status {
    OFFT_OK = 0,
    OFFT_ERR_INVALID_ARGUMENT = 1, /* null handle or pointer, bad buffer length */
    OFFT_ERR_DOMAIN = 2,           /* value outside the operation's domain */
    OFFT_ERR_CONFIG = 3,           /* malformed or unknown configuration content */
    OFFT_ERR_NOT_FOUND = 4,        /* unknown sweep name, cell or port */
    OFFT_ERR_DEGENERATE = 5,       /* no meaningful answer exists */
    OFFT_ERR_IO = 6,               /* file could not be read */
    OFFT_ERR_INTERNAL = 7
} offt_status;

typedef enum offt_format { OFFT_FORMAT_CSV = 0, OFFT_FORMAT_JSON = 1 } offt_format;

typedef struct offt_config offt_config;
typedef struct offt_network offt_network;
typedef struct offt_sweep_result offt_sweep_result;

OFFT_API const char* offt_last_error(void);
OFFT_API const char* offt_status_name(offt_status status);
OFFT_API void offt_string_free(char* s);

/* Configuration */
OFFT_API offt_status offt_config_default(offt_config** out);
OFFT_API offt_status offt_config_parse(const char* json_text, offt_config** out);
OFFT_API offt_status offt_config_load(const char* path, offt_config** out);
OFFT_API void offt_config_destroy(offt_config* config);

OFFT_API offt_status offt_config_output_directory(const offt_config* config, char** out);
OFFT_API offt_status offt_config_set_output_directory(offt_config* config, const char* directory);
OFFT_API offt_status offt_config_output_format(const offt_config* config, offt_format* out);
OFFT_API offt_status offt_config_grid(const offt_config* config, double* f_lo, double* f_hi, size_t* points);
OFFT_API offt_status offt_config_scaling_n_max(const offt_config* config, int* out);
/* Heater length (m), wavelength (m) and dn/dT (1/K) of the thermal section. */
OFFT_API offt_status offt_config_thermal(const offt_config* config, double* length, double* wavelength,
                                         double* dn_dT);
/* Newline-separated sweep names. */
OFFT_API offt_status offt_config_sweep_names(const offt_config* config, char** out);

/* Network. n_override = 0 keeps the configured size. */
OFFT_API offt_status offt_network_build(const offt_config* config, int n_override, offt_network** out);
OFFT_API offt_status offt_network_create_ideal(int n_points, double system_frequency, offt_network** out);
OFFT_API void offt_network_destroy(offt_network* net);

OFFT_API offt_status offt_network_n_points(const offt_network* net, int* out);
/* out[physical] = label; out must hold n_points entries. */
OFFT_API offt_status offt_network_port_map(const offt_network* net, int* out, size_t length);
/* Complex field transfer of output X_label at `count` frequencies (Hz). */
OFFT_API offt_status offt_network_response(const offt_network* net, int label, const double* frequencies,
                                           size_t count, double* re, double* im);
OFFT_API offt_status offt_network_peak_frequency(const offt_network* net, int label, double f_lo, double f_hi,
                                                 double resolution, double* out);
/* Time-domain run of `length` input samples at spacing T/N. Outputs are
 * label-ordered: out_re[label * length + i]. */
OFFT_API offt_status offt_network_time_simulate(const offt_network* net, const double* in_re, const double* in_im,
                                                size_t length, double* out_re, double* out_im);
/* Largest stage-1 long-arm heater detuning (rad) keeping aggregate leakage
 * below threshold_db at the probe frequency; probe <= 0 uses the target's peak. */
OFFT_API offt_status offt_network_crosstalk_tolerance(const offt_network* net, double threshold_db, int target_port,
                                                      double probe_frequency, double* out);

/* Rendered outputs in the config's format. labels = NULL selects every port. */
OFFT_API offt_status offt_render_response(const offt_config* config, const offt_network* net, const int* labels,
                                          size_t label_count, double f_lo, double f_hi, size_t points, char** out);

OFFT_API offt_status offt_sweep_run(const offt_config* config, const offt_network* net, const char* name,
                                    offt_sweep_result** out);
OFFT_API void offt_sweep_result_destroy(offt_sweep_result* result);
OFFT_API offt_status offt_sweep_point_count(const offt_sweep_result* result, size_t* out);
OFFT_API offt_status offt_sweep_render(const offt_sweep_result* result, offt_format format, char** out);

/* Table for N = 2 .. n_max and the crossover plus capacity report. */
OFFT_API offt_status offt_render_scaling(const offt_config* config, int n_max, char** table, char** report);

/* Thermo-optic conversions. */
OFFT_API offt_status offt_phase_to_temperature(double dphi, double length, double wavelength, double dn_dT,
                                               double* out);
OFFT_API offt_status offt_temperature_to_phase(double dT, double length, double wavelength, double dn_dT,
                                               double* out);

OFFT_API offt_status offt_channel_capacity(int bits_per_symbol, double bandwidth, int n_channels, double* out);

typedef struct offt_verify_summary {
    int n_points;
    int trials;
    double threshold;
    double max_residual;
    double mean_residual;
    int permutation_consistent;
    int passed;
} offt_verify_summary;

/* DFT-equivalence check over seeded random windows. worst_re/worst_im may be
 * NULL; otherwise they receive the n_points samples of the worst window. */
OFFT_API offt_status offt_verify(const offt_network* net, int trials, uint64_t seed, double threshold,
                                 offt_verify_summary* out, double* worst_re, double* worst_im);

#ifdef __cplusplus
}
#endif

#endif
