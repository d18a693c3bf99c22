//! Curve tables of the reference figures, copied verbatim.
//!
//! Each entry is (abscissa, ordinate).

// Coverage vs users per cell M, N_S = 300, lambda_T = 5e-9.
pub const USERS_TERRESTRIAL_32: [(f64, f64); 8] = [
    (1.0, 0.92963),
    (3.0, 0.8454),
    (5.0, 0.73698),
    (7.0, 0.64036),
    (9.0, 0.55979),
    (11.0, 0.48742),
    (13.0, 0.43074),
    (15.0, 0.38241),
];
pub const USERS_TERRESTRIAL_64: [(f64, f64); 8] = [
    (1.0, 0.9808),
    (3.0, 0.95397),
    (5.0, 0.91247),
    (7.0, 0.85787),
    (9.0, 0.79982),
    (11.0, 0.74187),
    (13.0, 0.68451),
    (15.0, 0.63221),
];
pub const USERS_HYBRID_32: [(f64, f64); 8] = [
    (1.0, 0.87631),
    (3.0, 0.87309),
    (5.0, 0.85954),
    (7.0, 0.8397),
    (9.0, 0.81723),
    (11.0, 0.7918),
    (13.0, 0.76891),
    (15.0, 0.7536),
];
pub const USERS_HYBRID_64: [(f64, f64); 8] = [
    (1.0, 0.90937),
    (3.0, 0.90924),
    (5.0, 0.90692),
    (7.0, 0.90055),
    (9.0, 0.88947),
    (11.0, 0.87766),
    (13.0, 0.85676),
    (15.0, 0.83657),
];

// Coverage vs satellite count N_S.
pub const SATELLITES_COVERAGE_1E9: [(f64, f64); 100] = [
    (1.0, 0.228247468322428),
    (11.0, 0.415163744655025),
    (21.0, 0.541143471365697),
    (31.0, 0.626663988255993),
    (41.0, 0.685370177154322),
    (51.0, 0.726146648236645),
    (61.0, 0.754758011247282),
    (71.0, 0.774964977448095),
    (81.0, 0.789246767914348),
    (91.0, 0.799260268539864),
    (101.0, 0.806130469010449),
    (111.0, 0.810634560317834),
    (121.0, 0.813319347529125),
    (131.0, 0.814576803174668),
    (141.0, 0.814693218969833),
    (151.0, 0.813881582578688),
    (161.0, 0.812303196652315),
    (171.0, 0.810082324125224),
    (181.0, 0.807316258212697),
    (191.0, 0.804082351636479),
    (201.0, 0.800442997299881),
    (211.0, 0.796449209432084),
    (221.0, 0.792143234990933),
    (231.0, 0.787560483623789),
    (241.0, 0.782730972145816),
    (251.0, 0.777680418517705),
    (261.0, 0.772431079541879),
    (271.0, 0.767002398902955),
    (281.0, 0.761411513262682),
    (291.0, 0.755673650989248),
    (301.0, 0.749802448873378),
    (311.0, 0.743810205621251),
    (321.0, 0.737708086193163),
    (331.0, 0.731506287623146),
    (341.0, 0.725214174431266),
    (351.0, 0.71884038986736),
    (361.0, 0.712392947822238),
    (371.0, 0.70587930918231),
    (381.0, 0.699306445596211),
    (391.0, 0.692680893002242),
    (401.0, 0.686008796786181),
    (411.0, 0.679295950066125),
    (421.0, 0.672547826308723),
    (431.0, 0.665769607250939),
    (441.0, 0.658966206918947),
    (451.0, 0.652142292390238),
    (461.0, 0.645302301828617),
    (471.0, 0.638450460227841),
    (481.0, 0.631590793223971),
    (491.0, 0.624727139274755),
    (501.0, 0.617863160454321),
    (511.0, 0.611002352070118),
    (521.0, 0.604148051275417),
    (531.0, 0.597303444822715),
    (541.0, 0.59047157608029),
    (551.0, 0.583655351415087),
    (561.0, 0.576857546029041),
    (571.0, 0.570080809322673),
    (581.0, 0.563327669848657),
    (591.0, 0.556600539908608),
    (601.0, 0.549901719838475),
    (611.0, 0.543233402021301),
    (621.0, 0.536597674660401),
    (631.0, 0.529996525341319),
    (641.0, 0.523431844406798),
    (651.0, 0.516905428165596),
    (661.0, 0.510418981953048),
    (671.0, 0.503974123058707),
    (681.0, 0.497572383534386),
    (691.0, 0.491215212893884),
    (701.0, 0.484903980714382),
    (711.0, 0.478639979147899),
    (721.0, 0.472424425350164),
    (731.0, 0.466258463833359),
    (741.0, 0.460143168748078),
    (751.0, 0.454079546099404),
    (761.0, 0.448068535901218),
    (771.0, 0.442111014272302),
    (781.0, 0.436207795477432),
    (791.0, 0.430359633916181),
    (801.0, 0.424567226061847),
    (811.0, 0.418831212352579),
    (821.0, 0.413152179036599),
    (831.0, 0.407530659973111),
    (841.0, 0.401967138390401),
    (851.0, 0.396462048602357),
    (861.0, 0.391015777684611),
    (871.0, 0.385628667111334),
    (881.0, 0.380301014353612),
    (891.0, 0.37503307444026),
    (901.0, 0.369825061481885),
    (911.0, 0.364677150158895),
    (921.0, 0.359589477174143),
    (931.0, 0.354562142670858),
    (941.0, 0.349595211616401),
    (951.0, 0.344688715152511),
    (961.0, 0.339842651912494),
    (971.0, 0.335056989305925),
    (981.0, 0.330331664771381),
    (991.0, 0.32566658699767),
];
pub const SATELLITES_COVERAGE_5E9: [(f64, f64); 100] = [
    (1.0, 0.369439975307134),
    (11.0, 0.49186137308005),
    (21.0, 0.576614285484099),
    (31.0, 0.636480472707207),
    (41.0, 0.67958420112498),
    (51.0, 0.711161185749215),
    (61.0, 0.734637460143785),
    (71.0, 0.752292297992596),
    (81.0, 0.765669048808935),
    (91.0, 0.775832216777788),
    (101.0, 0.78353006640625),
    (111.0, 0.78929869681348),
    (121.0, 0.793529514532522),
    (131.0, 0.796513582339741),
    (141.0, 0.798471194328525),
    (151.0, 0.799571897354343),
    (161.0, 0.799948254489006),
    (171.0, 0.799705453479517),
    (181.0, 0.798928117640638),
    (191.0, 0.797685206080875),
    (201.0, 0.796033590148842),
    (211.0, 0.794020699591446),
    (221.0, 0.791686505799292),
    (231.0, 0.789065026276334),
    (241.0, 0.786185478846677),
    (251.0, 0.783073176469419),
    (261.0, 0.77975022773473),
    (271.0, 0.776236090210902),
    (281.0, 0.772548011233101),
    (291.0, 0.768701381780282),
    (301.0, 0.764710022653004),
    (311.0, 0.760586417485944),
    (321.0, 0.756341903690132),
    (331.0, 0.751986829867511),
    (341.0, 0.747530686328093),
    (351.0, 0.742982213894409),
    (361.0, 0.738349495076282),
    (371.0, 0.733640030852643),
    (381.0, 0.728860805642201),
    (391.0, 0.724018342534579),
    (401.0, 0.71911875045318),
    (411.0, 0.714167764605339),
    (421.0, 0.709170781324446),
    (431.0, 0.704132888208679),
    (441.0, 0.699058890300356),
    (451.0, 0.693953332920337),
    (461.0, 0.688820521667053),
    (471.0, 0.683664540004178),
    (481.0, 0.678489264791226),
    (491.0, 0.6732983800539),
    (501.0, 0.668095389243919),
    (511.0, 0.662883626198765),
    (521.0, 0.65766626497952),
    (531.0, 0.652446328737807),
    (541.0, 0.647226697740315),
    (551.0, 0.642010116660434),
    (561.0, 0.636799201230585),
    (571.0, 0.631596444335409),
    (581.0, 0.626404221614649),
    (591.0, 0.621224796634906),
    (601.0, 0.616060325681249),
    (611.0, 0.610912862212784),
    (621.0, 0.605784361020211),
    (631.0, 0.600676682118454),
    (641.0, 0.595591594402954),
    (651.0, 0.590530779094574),
    (661.0, 0.585495832994805),
    (671.0, 0.580488271570152),
    (681.0, 0.575509531882294),
    (691.0, 0.570560975378352),
    (701.0, 0.565643890554056),
    (711.0, 0.560759495500807),
    (721.0, 0.555908940346423),
    (731.0, 0.551093309598202),
    (741.0, 0.546313624395762),
    (751.0, 0.541570844680424),
    (761.0, 0.536865871287011),
    (771.0, 0.532199547963267),
    (781.0, 0.527572663321556),
    (791.0, 0.522985952726969),
    (801.0, 0.518440100125501),
    (811.0, 0.513935739815568),
    (821.0, 0.509473458165818),
    (831.0, 0.505053795281844),
    (841.0, 0.500677246624207),
    (851.0, 0.496344264579838),
    (861.0, 0.492055259988817),
    (871.0, 0.487810603628249),
    (881.0, 0.483610627654835),
    (891.0, 0.479455627007592),
    (901.0, 0.475345860772089),
    (911.0, 0.471281553507392),
    (921.0, 0.467262896536884),
    (931.0, 0.463290049203998),
    (941.0, 0.459363140093874),
    (951.0, 0.455482268221832),
    (961.0, 0.451647504189541),
    (971.0, 0.447858891309689),
    (981.0, 0.444116446699953),
    (991.0, 0.44042016234697),
];
pub const SATELLITES_COVERAGE_1E8: [(f64, f64); 100] = [
    (1.0, 0.38133864421165),
    (11.0, 0.453075638688636),
    (21.0, 0.506408970471744),
    (31.0, 0.546943015581548),
    (41.0, 0.578372403847657),
    (51.0, 0.603175387340486),
    (61.0, 0.62304513744293),
    (71.0, 0.639160762883946),
    (81.0, 0.652359533106729),
    (91.0, 0.663247671702306),
    (101.0, 0.6722725823389),
    (111.0, 0.679770602826476),
    (121.0, 0.685999051365014),
    (131.0, 0.691158064790661),
    (141.0, 0.695405715243028),
    (151.0, 0.698868639620396),
    (161.0, 0.701649630589811),
    (171.0, 0.703833140193724),
    (181.0, 0.705489328451707),
    (191.0, 0.706677083086357),
    (201.0, 0.70744630140944),
    (211.0, 0.707839635847036),
    (221.0, 0.707893844467058),
    (231.0, 0.707640847006203),
    (241.0, 0.707108558757309),
    (251.0, 0.706321555061432),
    (261.0, 0.705301605301881),
    (271.0, 0.704068105405045),
    (281.0, 0.702638430703403),
    (291.0, 0.701028225791487),
    (301.0, 0.699251644147098),
    (311.0, 0.697321547411958),
    (321.0, 0.695249672058737),
    (331.0, 0.693046769524849),
    (341.0, 0.690722724632044),
    (351.0, 0.688286656136619),
    (361.0, 0.685747002497413),
    (371.0, 0.683111595354952),
    (381.0, 0.680387722746929),
    (391.0, 0.6775821837137),
    (401.0, 0.67470133565075),
    (411.0, 0.671751135527047),
    (421.0, 0.668737175895948),
    (431.0, 0.665664716469454),
    (441.0, 0.662538711899541),
    (451.0, 0.659363836306202),
    (461.0, 0.656144505006317),
    (471.0, 0.652884893826748),
    (481.0, 0.649588956326493),
    (491.0, 0.646260439203926),
    (501.0, 0.642902896124484),
    (511.0, 0.639519700169911),
    (521.0, 0.636114055081553),
    (531.0, 0.632689005445906),
    (541.0, 0.629247445950136),
    (551.0, 0.625792129817913),
    (561.0, 0.622325676521035),
    (571.0, 0.618850578849752),
    (581.0, 0.61536920941382),
    (591.0, 0.61188382663713),
    (601.0, 0.608396580300665),
    (611.0, 0.604909516681812),
    (621.0, 0.601424583332001),
    (631.0, 0.597943633529625),
    (641.0, 0.594468430440637),
    (651.0, 0.591000651015469),
    (661.0, 0.587541889647464),
    (671.0, 0.584093661615151),
    (681.0, 0.580657406328094),
    (691.0, 0.577234490393817),
    (701.0, 0.573826210521381),
    (711.0, 0.570433796275416),
    (721.0, 0.567058412692932),
    (731.0, 0.563701162773948),
    (741.0, 0.560363089855692),
    (751.0, 0.557045179879218),
    (761.0, 0.553748363556325),
    (771.0, 0.550473518443821),
    (781.0, 0.547221470931512),
    (791.0, 0.543992998149697),
    (801.0, 0.540788829801271),
    (811.0, 0.537609649923153),
    (821.0, 0.534456098581291),
    (831.0, 0.531328773503047),
    (841.0, 0.528228231650499),
    (851.0, 0.525154990737801),
    (861.0, 0.522109530695538),
    (871.0, 0.519092295084712),
    (881.0, 0.516103692462803),
    (891.0, 0.513144097704118),
    (901.0, 0.510213853276523),
    (911.0, 0.507313270476405),
    (921.0, 0.504442630623659),
    (931.0, 0.501602186218311),
    (941.0, 0.498792162060259),
    (951.0, 0.496012756333592),
    (961.0, 0.493264141656745),
    (971.0, 0.490546466099738),
    (981.0, 0.48785985416966),
    (991.0, 0.485204407765459),
];

// Rate (Mbit/s) vs satellite count N_S.
pub const SATELLITES_RATE_1E9: [(f64, f64); 21] = [
    (0.0, 70.8185564244104),
    (50.0, 493.810513405853),
    (100.0, 553.312587571652),
    (150.0, 552.006505951443),
    (200.0, 540.330512457457),
    (250.0, 523.768906344496),
    (300.0, 505.47915170504),
    (350.0, 486.662286756047),
    (400.0, 472.416591073905),
    (450.0, 459.227449214576),
    (500.0, 446.763128539025),
    (550.0, 431.104895081174),
    (600.0, 418.038359525717),
    (650.0, 407.502389427909),
    (700.0, 401.826808507067),
    (750.0, 388.053857442355),
    (800.0, 378.277663063174),
    (850.0, 369.282913919848),
    (900.0, 362.65214740126),
    (950.0, 355.275294048033),
    (1000.0, 347.970351288513),
];
pub const SATELLITES_RATE_5E9: [(f64, f64); 21] = [
    (0.0, 113.457599331404),
    (50.0, 387.478030584583),
    (100.0, 438.97979171987),
    (150.0, 447.679064335143),
    (200.0, 446.299319882517),
    (250.0, 440.261827817121),
    (300.0, 429.735976085771),
    (350.0, 420.979933403172),
    (400.0, 412.245336706883),
    (450.0, 397.762738247824),
    (500.0, 389.681815333828),
    (550.0, 383.898649354826),
    (600.0, 375.292762069968),
    (650.0, 363.202404976346),
    (700.0, 357.799655233006),
    (750.0, 350.235316390788),
    (800.0, 343.678795561095),
    (850.0, 339.071969563791),
    (900.0, 332.729101787568),
    (950.0, 324.165452524079),
    (1000.0, 319.007823266088),
];
pub const SATELLITES_RATE_1E8: [(f64, f64); 21] = [
    (0.0, 119.17980202041),
    (50.0, 284.157175685872),
    (100.0, 331.433106652893),
    (150.0, 346.13027621348),
    (200.0, 346.682324978235),
    (250.0, 345.535587519965),
    (300.0, 343.707028759544),
    (350.0, 341.055721299038),
    (400.0, 334.953375231998),
    (450.0, 328.961360316665),
    (500.0, 320.645531847581),
    (550.0, 319.472693511225),
    (600.0, 311.561757320581),
    (650.0, 306.505369448059),
    (700.0, 301.510780353324),
    (750.0, 298.72845604562),
    (800.0, 292.026772872257),
    (850.0, 287.535276143291),
    (900.0, 284.442679738442),
    (950.0, 279.562894992918),
    (1000.0, 273.635866735204),
];
