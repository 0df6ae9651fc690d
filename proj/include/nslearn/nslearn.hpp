#ifndef NSLEARN_NSLEARN_HPP
#define NSLEARN_NSLEARN_HPP

// Umbrella header.

#include "nslearn/errors.hpp"
#include "nslearn/panel.hpp"
#include "nslearn/losses.hpp"
#include "nslearn/functionals.hpp"
#include "nslearn/minimize.hpp"
#include "nslearn/design.hpp"
#include "nslearn/regression.hpp"
#include "nslearn/rng.hpp"
#include "nslearn/simulate.hpp"
#include "nslearn/csv.hpp"
#include "nslearn/report.hpp"

#endif  // NSLEARN_NSLEARN_HPP
