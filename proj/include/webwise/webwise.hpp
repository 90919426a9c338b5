#pragma once

#include "webwise/error.hpp"
#include "webwise/text.hpp"
#include "webwise/dom.hpp"
#include "webwise/action.hpp"
#include "webwise/env.hpp"
#include "webwise/tasks.hpp"
#include "webwise/program.hpp"
#include "webwise/prompt.hpp"
#include "webwise/llm.hpp"
#include "webwise/agent.hpp"
#include "webwise/report.hpp"
#include "webwise/bench.hpp"
