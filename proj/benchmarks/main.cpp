#include <benchmark/benchmark.h>

// libbenchmark_main.a ships LTO bytecode from another compiler version.
BENCHMARK_MAIN();
