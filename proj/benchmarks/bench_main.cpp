#include <benchmark/benchmark.h>

// libbenchmark_main ships as an LTO archive built by a different compiler.
BENCHMARK_MAIN();
