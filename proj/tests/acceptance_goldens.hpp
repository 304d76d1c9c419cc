/*
   Copyright 2026 The pgen Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Generated by tests/oracle/make_goldens.py. Do not edit.

#pragma once

#include <cstdint>
#include <vector>

namespace pgen::golden {

struct CocGolden {
    const char* source;
    unsigned b;
    unsigned k;
    const char* counts_of_counts;  // i:words;...
    unsigned sup_i;
    double sup_value;
    double tv_distance;
    bool exceeds_threshold;
};

inline const std::vector<CocGolden> kChampernowne = {
    {"champernowne", 10, 5, "0:42892;1:32274;2:12991;3:7825;4:2474;5:1068;6:351;7:84;8:32;9:7;10:2", 0, 0.061040558828557678, 0.099169171804929858, false},
    {"champernowne", 10, 6, "0:461848;1:312727;2:106516;3:43629;4:46731;5:18233;6:7715;7:2068;8:391;9:69;10:55;11:16;12:2", 0, 0.093968558828557678, 0.15026040201600164, false},
    {"champernowne", 10, 7, "0:5244254;1:2726255;2:796283;3:265830;4:295164;5:439116;6:154415;7:56729;8:16739;9:3670;10:692;11:389;12:346;13:94;14:17;15:5;16:2", 0, 0.15654595882855768, 0.23429560195240496, false},
};

inline const std::vector<CocGolden> kConjecture = {
    {"fibonacci", 2, 10, "0:393;1:362;2:173;3:73;4:18;5:5", 0, 0.015909621328557678, 0.029952409074745175, false},
    {"fibonacci", 2, 11, "0:743;1:779;2:344;3:150;4:29;5:3", 2, 0.015970970585721161, 0.024420599883317291, false},
    {"fibonacci", 2, 12, "0:1542;1:1489;2:705;3:263;4:81;5:12;6:4", 2, 0.011820579960721161, 0.016393846166213525, false},
    {"fibonacci", 2, 13, "0:3149;1:2866;2:1453;3:531;4:151;5:33;6:6;7:2;8:1", 1, 0.018025925546442322, 0.024598607272261451, false},
    {"fibonacci", 2, 14, "0:6095;1:5966;2:2966;3:1021;4:267;5:59;6:10", 0, 0.0041298361723076784, 0.0067363872814515055, false},
    {"fibonacci", 2, 15, "0:12017;1:12159;2:5943;3:2003;4:533;5:97;6:15;7:1", 1, 0.0031837912504326784, 0.0041213503422475817, false},
    {"fibonacci", 2, 16, "0:23912;1:24350;2:12104;3:3974;4:964;5:198;6:29;7:4;8:1", 1, 0.0036720725004326784, 0.0044308695221973449, false},
    {"fibonacci", 10, 4, "0:3660;1:3720;2:1808;3:618;4:165;5:24;6:5", 1, 0.0041205588285576784, 0.0057790085845071947, false},
    {"fibonacci", 10, 5, "0:36782;1:36788;2:18380;3:6209;4:1467;5:302;6:58;7:13;8:1", 3, 0.00077675980475961307, 0.00090425901833356749, false},
    {"fibonacci", 10, 6, "0:368418;1:367159;2:183934;3:61388;4:15403;5:3081;6:545;7:57;8:12;9:3", 1, 0.0007204411714423216, 0.00074226513525520253, false},
    {"thue-morse-squares", 2, 10, "0:449;1:308;2:160;3:60;4:28;5:11;6:7;7:1", 0, 0.070597121328557678, 0.097517651149078511, false},
    {"thue-morse-squares", 2, 11, "0:821;1:712;2:326;3:116;4:45;5:16;6:9;7:2;8:1", 0, 0.032999465078557678, 0.049656964655001838, false},
    {"thue-morse-squares", 2, 12, "0:1702;1:1343;2:628;3:278;4:90;5:38;6:10;7:3;8:4", 0, 0.047647902578557678, 0.070619115084761451, false},
    {"thue-morse-squares", 2, 13, "0:3293;1:2855;2:1250;3:511;4:174;5:67;6:29;7:8;8:3;9:1;10:1", 0, 0.034098097891057678, 0.050720538992429858, false},
    {"thue-morse-squares", 2, 14, "0:6608;1:5599;2:2678;3:950;4:334;5:112;6:67;7:19;8:8;9:8;12:1", 0, 0.035440871328557678, 0.049961125891119239, false},
    {"thue-morse-squares", 2, 15, "0:13001;1:11378;2:5445;3:2000;4:567;5:198;6:79;7:54;8:30;9:12;10:2;11:2", 0, 0.028879592031682678, 0.038700029737139612, false},
    {"thue-morse-squares", 2, 16, "0:25774;1:23081;2:10877;3:3856;4:1248;5:380;6:163;7:74;8:43;9:19;10:11;11:5;12:2;13:2;15:1", 0, 0.025400588125432678, 0.036136552347267398, false},
    {"rudin-shapiro-squares", 2, 10, "0:396;1:359;2:172;3:75;4:16;5:4;6:2", 0, 0.018839308828557678, 0.033347715406451506, false},
    {"rudin-shapiro-squares", 2, 11, "0:759;1:754;2:365;3:128;4:33;5:6;6:3", 2, 0.0057170643357211608, 0.0059362799947712033, false},
    {"rudin-shapiro-squares", 2, 12, "0:1580;1:1429;2:736;3:235;4:92;5:22;6:2", 1, 0.019002488046442322, 0.027300805519985562, false},
    {"rudin-shapiro-squares", 2, 13, "0:3203;1:2798;2:1469;3:504;4:161;5:43;6:13;7:1", 1, 0.026326706796442322, 0.030955387516338124, false},
    {"rudin-shapiro-squares", 2, 14, "0:6351;1:5732;2:2855;3:1023;4:293;5:85;6:39;7:6", 0, 0.019754836172307678, 0.027720524235088124, false},
    {"rudin-shapiro-squares", 2, 15, "0:12703;1:11518;2:5624;3:2054;4:617;5:175;6:50;7:20;8:6;9:1", 0, 0.019785353750432678, 0.028686948963891821, false},
    {"rudin-shapiro-squares", 2, 16, "0:24884;1:23687;2:11392;3:3965;4:1145;5:292;6:105;7:41;8:15;9:7;10:3", 0, 0.011820265859807678, 0.017368251843920245, false},
};

// O_12 of the b=2 iid source with seed 12.
inline constexpr std::uint64_t kOk12Seed = 12;
inline constexpr std::uint64_t kOk12Prefix = 48821;
inline constexpr std::uint64_t kOk12SnapshotDigest = 0x175f1a6180118042ULL;
inline constexpr std::size_t kOk12Witnesses = 0;

}  // namespace pgen::golden
