#include <benchmark/benchmark.h>
#include "soldyn/evolution.hpp"
int main(){return 0;}
