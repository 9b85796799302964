#pragma once

// Generated by tools/embed_calibration.py from a `c3d calibrate` table; do not edit.

#include <nlohmann/json.hpp>

#include "c3d/calibrate.hpp"

namespace c3d {

inline constexpr const char* kBuiltinCalibrationJson = R"json({
 "format": "c3d-calibration/1",
 "kinds": [
  {
   "clean": {
    "ssim": 1.0,
    "value": 0.0
   },
   "entries": [
    {
     "achieved_ssim": 0.852453362463913,
     "converged": true,
     "iterations": 10,
     "severity": 1,
     "target": 0.85,
     "value": 0.09765625
    },
    {
     "achieved_ssim": 0.7462034958331983,
     "converged": true,
     "iterations": 7,
     "severity": 2,
     "target": 0.75,
     "value": 0.15625
    },
    {
     "achieved_ssim": 0.6510517888184382,
     "converged": true,
     "iterations": 10,
     "severity": 3,
     "target": 0.65,
     "value": 0.25390625
    },
    {
     "achieved_ssim": 0.551385466876643,
     "converged": true,
     "iterations": 9,
     "severity": 4,
     "target": 0.55,
     "value": 0.4296875
    },
    {
     "achieved_ssim": 0.44469635184987055,
     "converged": true,
     "iterations": 6,
     "severity": 5,
     "target": 0.45,
     "value": 0.9375
    }
   ],
   "kind": "near_focus",
   "parameter": "aperture",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ]
  },
  {
   "clean": {
    "ssim": 1.0,
    "value": 0.0
   },
   "entries": [
    {
     "achieved_ssim": 0.8481018052332314,
     "converged": true,
     "iterations": 7,
     "severity": 1,
     "target": 0.85,
     "value": 0.15625
    },
    {
     "achieved_ssim": 0.7479701192310106,
     "converged": true,
     "iterations": 9,
     "severity": 2,
     "target": 0.75,
     "value": 0.2734375
    },
    {
     "achieved_ssim": 0.6481981978430672,
     "converged": true,
     "iterations": 9,
     "severity": 3,
     "target": 0.65,
     "value": 0.5078125
    },
    {
     "achieved_ssim": 0.5456792408333746,
     "converged": true,
     "iterations": 4,
     "severity": 4,
     "target": 0.55,
     "value": 1.25
    },
    {
     "achieved_ssim": 0.4492713529614344,
     "converged": true,
     "iterations": 4,
     "severity": 5,
     "target": 0.45,
     "value": 3.75
    }
   ],
   "kind": "far_focus",
   "parameter": "aperture",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ]
  },
  {
   "clean": {
    "ssim": 1.0,
    "value": 0.0
   },
   "entries": [
    {
     "achieved_ssim": 0.8461929509796036,
     "converged": true,
     "iterations": 9,
     "severity": 1,
     "target": 0.85,
     "value": 0.029296875
    },
    {
     "achieved_ssim": 0.7475307179204879,
     "converged": true,
     "iterations": 10,
     "severity": 2,
     "target": 0.75,
     "value": 0.0498046875
    },
    {
     "achieved_ssim": 0.6426476698439891,
     "converged": true,
     "iterations": 8,
     "severity": 3,
     "target": 0.65,
     "value": 0.08203125
    },
    {
     "achieved_ssim": 0.5457496556048951,
     "converged": true,
     "iterations": 6,
     "severity": 4,
     "target": 0.55,
     "value": 0.140625
    },
    {
     "achieved_ssim": 0.45778853214418785,
     "converged": true,
     "iterations": 3,
     "severity": 5,
     "target": 0.45,
     "value": 0.375
    }
   ],
   "kind": "xy_motion_blur",
   "parameter": "extent",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ]
  },
  {
   "clean": {
    "ssim": 1.0,
    "value": 0.0
   },
   "entries": [
    {
     "achieved_ssim": 0.8466169325420185,
     "converged": true,
     "iterations": 8,
     "severity": 1,
     "target": 0.85,
     "value": 0.05859375
    },
    {
     "achieved_ssim": 0.7420466073553427,
     "converged": true,
     "iterations": 7,
     "severity": 2,
     "target": 0.75,
     "value": 0.1171875
    },
    {
     "achieved_ssim": 0.6422474976835212,
     "converged": true,
     "iterations": 7,
     "severity": 3,
     "target": 0.65,
     "value": 0.2109375
    },
    {
     "achieved_ssim": 0.5508702944179849,
     "converged": true,
     "iterations": 5,
     "severity": 4,
     "target": 0.55,
     "value": 0.46875
    },
    {
     "achieved_ssim": 0.4433197054297488,
     "converged": true,
     "iterations": 0,
     "severity": 5,
     "target": 0.45,
     "value": 3.0
    }
   ],
   "kind": "z_motion_blur",
   "parameter": "extent",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ]
  },
  {
   "clean": {
    "ssim": 1.0,
    "value": 0.0
   },
   "entries": [
    {
     "achieved_ssim": 0.8503251299543034,
     "converged": true,
     "iterations": 9,
     "severity": 1,
     "target": 0.85,
     "value": 0.05859375
    },
    {
     "achieved_ssim": 0.7546368343067225,
     "converged": true,
     "iterations": 6,
     "severity": 2,
     "target": 0.75,
     "value": 0.09375
    },
    {
     "achieved_ssim": 0.6510928556576999,
     "converged": true,
     "iterations": 7,
     "severity": 3,
     "target": 0.65,
     "value": 0.140625
    },
    {
     "achieved_ssim": 0.5464705018551085,
     "converged": true,
     "iterations": 7,
     "severity": 4,
     "target": 0.55,
     "value": 0.203125
    },
    {
     "achieved_ssim": 0.4524172563586631,
     "converged": true,
     "iterations": 6,
     "severity": 5,
     "target": 0.45,
     "value": 0.28125
    }
   ],
   "kind": "fog_3d",
   "parameter": "beta",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ]
  },
  {
   "clean": {
    "ssim": 0.9463127716936905,
    "value": 100000.0
   },
   "entries": [
    {
     "achieved_ssim": 0.8401883147991555,
     "converged": true,
     "iterations": 11,
     "severity": 1,
     "target": 0.85,
     "value": 147.48291015625
    },
    {
     "achieved_ssim": 0.7589096234960234,
     "converged": true,
     "iterations": 11,
     "severity": 2,
     "target": 0.75,
     "value": 147.48291015625
    },
    {
     "achieved_ssim": 0.6529739718569676,
     "converged": true,
     "iterations": 8,
     "severity": 3,
     "target": 0.65,
     "value": 391.62109375
    },
    {
     "achieved_ssim": 0.4552565743987805,
     "converged": false,
     "iterations": 0,
     "severity": 4,
     "target": 0.55,
     "value": 100000.0
    },
    {
     "achieved_ssim": 0.22222267384116987,
     "converged": false,
     "iterations": 0,
     "severity": 5,
     "target": 0.45,
     "value": 100000.0
    }
   ],
   "kind": "low_light_noise",
   "parameter": "photon_level",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ]
  },
  {
   "clean": {
    "ssim": 0.9795530928671164,
    "value": 0.0
   },
   "entries": [
    {
     "achieved_ssim": 0.8581761976189395,
     "converged": true,
     "iterations": 6,
     "severity": 1,
     "target": 0.85,
     "value": 0.0390625
    },
    {
     "achieved_ssim": 0.7557823504865061,
     "converged": true,
     "iterations": 7,
     "severity": 2,
     "target": 0.75,
     "value": 0.05859375
    },
    {
     "achieved_ssim": 0.6584081644490307,
     "converged": true,
     "iterations": 5,
     "severity": 3,
     "target": 0.65,
     "value": 0.078125
    },
    {
     "achieved_ssim": 0.5567691997120465,
     "converged": true,
     "iterations": 6,
     "severity": 4,
     "target": 0.55,
     "value": 0.1015625
    },
    {
     "achieved_ssim": 0.4494913783686147,
     "converged": true,
     "iterations": 6,
     "severity": 5,
     "target": 0.45,
     "value": 0.1328125
    }
   ],
   "kind": "iso_noise",
   "parameter": "read_sigma",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ]
  },
  {
   "clean": {
    "ssim": 0.9998658480639206,
    "value": 8.0
   },
   "entries": [
    {
     "achieved_ssim": 0.8682685103490695,
     "converged": false,
     "iterations": 8,
     "severity": 1,
     "target": 0.85,
     "value": 3.0
    },
    {
     "achieved_ssim": 0.8682685103490695,
     "converged": false,
     "iterations": 8,
     "severity": 2,
     "target": 0.75,
     "value": 3.0
    },
    {
     "achieved_ssim": 0.6134626504729801,
     "converged": false,
     "iterations": 8,
     "severity": 3,
     "target": 0.65,
     "value": 2.0
    },
    {
     "achieved_ssim": 0.6134626504729801,
     "converged": false,
     "iterations": 8,
     "severity": 4,
     "target": 0.55,
     "value": 2.0
    },
    {
     "achieved_ssim": 0.6134626504729801,
     "converged": false,
     "iterations": 8,
     "severity": 5,
     "target": 0.45,
     "value": 2.0
    }
   ],
   "kind": "color_quant",
   "parameter": "bit_depth",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ]
  },
  {
   "kind": "abr_compression",
   "parameter": "target_bitrate",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ],
   "clean": {
    "value": 0,
    "ssim": 1.0
   },
   "entries": [
    {
     "severity": 1,
     "value": 200000,
     "target": 0.85,
     "achieved_ssim": 0.85,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 2,
     "value": 100000,
     "target": 0.75,
     "achieved_ssim": 0.75,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 3,
     "value": 50000,
     "target": 0.65,
     "achieved_ssim": 0.65,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 4,
     "value": 25000,
     "target": 0.55,
     "achieved_ssim": 0.55,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 5,
     "value": 10000,
     "target": 0.45,
     "achieved_ssim": 0.45,
     "iterations": 0,
     "converged": false
    }
   ]
  },
  {
   "kind": "crf_compression",
   "parameter": "crf",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ],
   "clean": {
    "value": 0,
    "ssim": 1.0
   },
   "entries": [
    {
     "severity": 1,
     "value": 30,
     "target": 0.85,
     "achieved_ssim": 0.85,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 2,
     "value": 35,
     "target": 0.75,
     "achieved_ssim": 0.75,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 3,
     "value": 40,
     "target": 0.65,
     "achieved_ssim": 0.65,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 4,
     "value": 45,
     "target": 0.55,
     "achieved_ssim": 0.55,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 5,
     "value": 51,
     "target": 0.45,
     "achieved_ssim": 0.45,
     "iterations": 0,
     "converged": false
    }
   ]
  },
  {
   "kind": "bit_error",
   "parameter": "n_bit_flips",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ],
   "clean": {
    "value": 0,
    "ssim": 1.0
   },
   "entries": [
    {
     "severity": 1,
     "value": 10,
     "target": 0.85,
     "achieved_ssim": 0.85,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 2,
     "value": 20,
     "target": 0.75,
     "achieved_ssim": 0.75,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 3,
     "value": 40,
     "target": 0.65,
     "achieved_ssim": 0.65,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 4,
     "value": 80,
     "target": 0.55,
     "achieved_ssim": 0.55,
     "iterations": 0,
     "converged": false
    },
    {
     "severity": 5,
     "value": 160,
     "target": 0.45,
     "achieved_ssim": 0.45,
     "iterations": 0,
     "converged": false
    }
   ]
  },
  {
   "clean": {
    "ssim": 1.0,
    "value": 0.0
   },
   "entries": [
    {
     "achieved_ssim": 0.8431099000665955,
     "converged": true,
     "iterations": 7,
     "severity": 1,
     "target": 0.85,
     "value": 1.171875
    },
    {
     "achieved_ssim": 0.7446288848410761,
     "converged": true,
     "iterations": 8,
     "severity": 2,
     "target": 0.75,
     "value": 1.5234375
    },
    {
     "achieved_ssim": 0.6546419924902317,
     "converged": true,
     "iterations": 9,
     "severity": 3,
     "target": 0.65,
     "value": 2.05078125
    },
    {
     "achieved_ssim": 0.5527166681321035,
     "converged": true,
     "iterations": 7,
     "severity": 4,
     "target": 0.55,
     "value": 2.578125
    },
    {
     "achieved_ssim": 0.44525632974826523,
     "converged": true,
     "iterations": 3,
     "severity": 5,
     "target": 0.45,
     "value": 3.75
    }
   ],
   "kind": "defocus_2d",
   "parameter": "radius",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ]
  },
  {
   "clean": {
    "ssim": 1.0,
    "value": 0.0
   },
   "entries": [
    {
     "achieved_ssim": 0.840857348122879,
     "converged": true,
     "iterations": 9,
     "severity": 1,
     "target": 0.85,
     "value": 2.03125
    },
    {
     "achieved_ssim": 0.7595012869630761,
     "converged": true,
     "iterations": 8,
     "severity": 2,
     "target": 0.75,
     "value": 3.4375
    },
    {
     "achieved_ssim": 0.651329922139654,
     "converged": true,
     "iterations": 8,
     "severity": 3,
     "target": 0.65,
     "value": 4.6875
    },
    {
     "achieved_ssim": 0.5555956103048839,
     "converged": true,
     "iterations": 9,
     "severity": 4,
     "target": 0.55,
     "value": 7.96875
    },
    {
     "achieved_ssim": 0.4468941899294748,
     "converged": true,
     "iterations": 4,
     "severity": 5,
     "target": 0.45,
     "value": 15.0
    }
   ],
   "kind": "motion_2d",
   "parameter": "length",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ]
  },
  {
   "clean": {
    "ssim": 1.0,
    "value": 0.0
   },
   "entries": [
    {
     "achieved_ssim": 0.8583800753825185,
     "converged": true,
     "iterations": 6,
     "severity": 1,
     "target": 0.85,
     "value": 0.234375
    },
    {
     "achieved_ssim": 0.7532627011131431,
     "converged": true,
     "iterations": 6,
     "severity": 2,
     "target": 0.75,
     "value": 0.390625
    },
    {
     "achieved_ssim": 0.6426646443114992,
     "converged": true,
     "iterations": 7,
     "severity": 3,
     "target": 0.65,
     "value": 0.5859375
    },
    {
     "achieved_ssim": 0.55166063093354,
     "converged": true,
     "iterations": 5,
     "severity": 4,
     "target": 0.55,
     "value": 0.78125
    },
    {
     "achieved_ssim": 0.45049973404752297,
     "converged": true,
     "iterations": 7,
     "severity": 5,
     "target": 0.45,
     "value": 1.0546875
    }
   ],
   "kind": "fog_2d",
   "parameter": "beta",
   "targets": [
    0.85,
    0.75,
    0.65,
    0.55,
    0.45
   ]
  }
 ],
 "manifest_hash": "9f1bd9818ea88cad",
 "sample_manifest": [
  "scene_0000",
  "scene_0001",
  "scene_0002",
  "scene_0003",
  "scene_0004",
  "scene_0005",
  "scene_0006",
  "scene_0007",
  "scene_0008",
  "scene_0009",
  "scene_0010",
  "scene_0011",
  "scene_0012",
  "scene_0013",
  "scene_0014",
  "scene_0015",
  "scene_0016",
  "scene_0017",
  "scene_0018",
  "scene_0019",
  "scene_0020",
  "scene_0021",
  "scene_0022",
  "scene_0023",
  "scene_0024",
  "scene_0025",
  "scene_0026",
  "scene_0027",
  "scene_0028",
  "scene_0029",
  "scene_0030",
  "scene_0031",
  "scene_0032",
  "scene_0033",
  "scene_0034",
  "scene_0035",
  "scene_0036",
  "scene_0037",
  "scene_0038",
  "scene_0039",
  "scene_0040",
  "scene_0041",
  "scene_0042",
  "scene_0043",
  "scene_0044",
  "scene_0045",
  "scene_0046",
  "scene_0047",
  "scene_0048",
  "scene_0049",
  "scene_0050",
  "scene_0051",
  "scene_0052",
  "scene_0053",
  "scene_0054",
  "scene_0055",
  "scene_0056",
  "scene_0057",
  "scene_0058",
  "scene_0059",
  "scene_0060",
  "scene_0061",
  "scene_0062",
  "scene_0063"
 ],
 "seed": 0
})json";

// Default table used when no calibration file is given.
inline CalibrationTable builtin_calibration() {
  return CalibrationTable::from_json(nlohmann::json::parse(kBuiltinCalibrationJson));
}

}  // namespace c3d
