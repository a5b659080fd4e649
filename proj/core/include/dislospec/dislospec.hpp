#pragma once

#include "dislospec/assembly.hpp"
#include "dislospec/errors.hpp"
#include "dislospec/fd_oracle.hpp"
#include "dislospec/gevp.hpp"
#include "dislospec/integrals.hpp"
#include "dislospec/io.hpp"
#include "dislospec/model.hpp"
#include "dislospec/optimize.hpp"
#include "dislospec/sweep.hpp"
#include "dislospec/threading.hpp"
