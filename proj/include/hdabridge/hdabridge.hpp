#pragma once

#include "hdabridge/cts.hpp"
#include "hdabridge/cubical.hpp"
#include "hdabridge/dot.hpp"
#include "hdabridge/error.hpp"
#include "hdabridge/functors.hpp"
#include "hdabridge/hda.hpp"
#include "hdabridge/io.hpp"
#include "hdabridge/iso.hpp"
#include "hdabridge/laws.hpp"
#include "hdabridge/models.hpp"
#include "hdabridge/report.hpp"
#include "hdabridge/word.hpp"
#include "hdabridge/zoo.hpp"
