#pragma once

// Umbrella header: every module plus the experiment harness.

#include "aclab/core/error.hpp"
#include "aclab/core/expression.hpp"
#include "aclab/core/quadrature.hpp"
#include "aclab/core/types.hpp"
#include "aclab/core/wirtinger.hpp"
#include "aclab/counterexample/e4.hpp"
#include "aclab/counterexample/lelong.hpp"
#include "aclab/disc/cauchy_green.hpp"
#include "aclab/disc/fft_convolution.hpp"
#include "aclab/disc/solver.hpp"
#include "aclab/harness/runner.hpp"
#include "aclab/measure/grid_measure.hpp"
#include "aclab/measure/lemma_a1.hpp"
#include "aclab/measure/lemma_a2.hpp"
#include "aclab/measure/lemma_a3.hpp"
#include "aclab/measure/remark1.hpp"
#include "aclab/psh/candidate.hpp"
#include "aclab/psh/certify.hpp"
#include "aclab/psh/hessian.hpp"
#include "aclab/psh/model.hpp"
#include "aclab/psh/prop1.hpp"
#include "aclab/psh/terms.hpp"
#include "aclab/structure/frame.hpp"
#include "aclab/structure/nijenhuis.hpp"
#include "aclab/structure/normalization.hpp"
#include "aclab/structure/structure_field.hpp"
