// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

#include "schemaguard/bundle.hpp"
#include "schemaguard/circuit.hpp"
#include "schemaguard/constraints.hpp"
#include "schemaguard/error.hpp"
#include "schemaguard/feedback.hpp"
#include "schemaguard/harness.hpp"
#include "schemaguard/knowledge_graph.hpp"
#include "schemaguard/stats.hpp"
#include "schemaguard/subgraph_match.hpp"
#include "schemaguard/subprocess.hpp"
#include "schemaguard/topology.hpp"
#include "schemaguard/violation.hpp"
