/*
 * lossphase.hpp — umbrella header.
 *
 * Optimal Bayesian phase estimation for a lossy two-mode interferometer:
 * exact loss-channel combinatorics, banded-eigenproblem optimization of
 * the probe state, analytic lower bounds, the coherent-state classical
 * benchmark, and Monte Carlo validation of the optimal covariant
 * measurement.
 */

#pragma once

#include "lossphase/bounds.hpp"
#include "lossphase/classical.hpp"
#include "lossphase/cost_matrix.hpp"
#include "lossphase/cost_spec.hpp"
#include "lossphase/eigensolver.hpp"
#include "lossphase/loss_model.hpp"
#include "lossphase/optimizer.hpp"
#include "lossphase/outcome_density.hpp"
#include "lossphase/probe_state.hpp"
#include "lossphase/sampler.hpp"
#include "lossphase/sweep.hpp"
#include "lossphase/version.hpp"
