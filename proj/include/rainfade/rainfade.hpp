#pragma once

#include "rainfade/attack_sim.hpp"
#include "rainfade/channel_model.hpp"
#include "rainfade/common.hpp"
#include "rainfade/config.hpp"
#include "rainfade/experiments.hpp"
#include "rainfade/missrate.hpp"
#include "rainfade/rain_attenuation.hpp"
#include "rainfade/secrecy.hpp"
