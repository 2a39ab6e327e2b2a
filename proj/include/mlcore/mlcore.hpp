#pragma once

#include "mlcore/errors.hpp"
#include "mlcore/generators.hpp"
#include "mlcore/graph.hpp"
#include "mlcore/io.hpp"
#include "mlcore/multilayer_apps.hpp"
#include "mlcore/multilayer_core.hpp"
#include "mlcore/parallel.hpp"
#include "mlcore/peeling.hpp"
#include "mlcore/random.hpp"
#include "mlcore/signed_polarity.hpp"
#include "mlcore/temporal_core.hpp"
