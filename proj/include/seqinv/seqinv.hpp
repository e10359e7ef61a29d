#pragma once

// Everything in one include.

#include "seqinv/algebraic_kernel.hpp"
#include "seqinv/bfile.hpp"
#include "seqinv/config.hpp"
#include "seqinv/counting.hpp"
#include "seqinv/dfao.hpp"
#include "seqinv/dfao_io.hpp"
#include "seqinv/equations.hpp"
#include "seqinv/error.hpp"
#include "seqinv/family.hpp"
#include "seqinv/field.hpp"
#include "seqinv/machines.hpp"
#include "seqinv/ntt.hpp"
#include "seqinv/probe.hpp"
#include "seqinv/progression.hpp"
#include "seqinv/reproduce.hpp"
#include "seqinv/runs.hpp"
#include "seqinv/sequences.hpp"
#include "seqinv/series.hpp"
#include "seqinv/structure.hpp"
#include "seqinv/sync.hpp"
