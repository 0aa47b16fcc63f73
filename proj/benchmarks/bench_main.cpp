#include <benchmark/benchmark.h>

// The packaged libbenchmark_main.a carries LTO bytecode from another compiler
// release, so the entry point is built here instead.
BENCHMARK_MAIN();
