#pragma once

#include "c3d/bench.hpp"
#include "c3d/builtin_calibration.hpp"
#include "c3d/calibrate.hpp"
#include "c3d/camera.hpp"
#include "c3d/corruption.hpp"
#include "c3d/depth.hpp"
#include "c3d/dof.hpp"
#include "c3d/filters.hpp"
#include "c3d/fog.hpp"
#include "c3d/image.hpp"
#include "c3d/io.hpp"
#include "c3d/motion.hpp"
#include "c3d/noise.hpp"
#include "c3d/parallel.hpp"
#include "c3d/reference2d.hpp"
#include "c3d/rng.hpp"
#include "c3d/scenes.hpp"
#include "c3d/ssim.hpp"
#include "c3d/video.hpp"
#include "c3d/jobs.hpp"
