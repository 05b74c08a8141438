#pragma once

// Data-parallel inner loops. Each kernel has a serial reference
// implementation and an OpenMP implementation with the same contract; the
// tests require bit-identical results and bench/ compares their speed.

#include "birkhoff/rotations.hpp"

#include <functional>
#include <span>
#include <vector>

namespace birkhoff::kernels {

DivisorScan divisor_scan_serial(std::span<const double> rho, int K, ScanMode mode, double tau);
DivisorScan divisor_scan_omp(std::span<const double> rho, int K, ScanMode mode, double tau);

// Evaluates fn(i) for i in [0, count) into a vector in index order.
std::vector<double> map_indices_serial(std::size_t count, const std::function<double(std::size_t)>& fn);
std::vector<double> map_indices_omp(std::size_t count, const std::function<double(std::size_t)>& fn);

// 0 means "leave the OpenMP default".
void set_thread_count(int threads);
int thread_count();

}  // namespace birkhoff::kernels
