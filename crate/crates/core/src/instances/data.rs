// maxcut: 76 edges
pub(crate) const MAXCUT_N18_EDGES: [(usize, usize, f64); 76] = [
    (0, 1, 0.989287), (0, 2, 0.032138), (0, 3, 0.351590), (0, 6, 0.036441),
    (0, 7, 0.584669), (0, 9, 0.731521), (0, 11, 0.141659), (0, 12, 0.371674),
    (0, 14, 0.387308), (0, 16, 0.360192), (1, 2, 0.690304), (1, 3, 0.974171),
    (1, 5, 0.909797), (1, 6, 0.424171), (1, 8, 0.580351), (1, 14, 0.121489),
    (1, 16, 0.205978), (1, 17, 0.086657), (2, 3, 0.017430), (2, 7, 0.790093),
    (2, 8, 0.839485), (2, 9, 0.296687), (2, 11, 0.379847), (2, 12, 0.338815),
    (2, 13, 0.285064), (2, 15, 0.130135), (3, 10, 0.009759), (3, 12, 0.963173),
    (3, 13, 0.099826), (3, 15, 0.714542), (4, 6, 0.985471), (4, 8, 0.808318),
    (4, 9, 0.685892), (4, 12, 0.173569), (4, 17, 0.571766), (5, 6, 0.242078),
    (5, 7, 0.183907), (5, 11, 0.137946), (5, 12, 0.757602), (5, 14, 0.385144),
    (5, 15, 0.519802), (5, 16, 0.693374), (6, 7, 0.670602), (6, 9, 0.696379),
    (6, 10, 0.111345), (6, 12, 0.514704), (6, 14, 0.854230), (7, 8, 0.599075),
    (7, 9, 0.825837), (7, 10, 0.617606), (7, 13, 0.605946), (7, 16, 0.983943),
    (7, 17, 0.085275), (8, 11, 0.349141), (8, 13, 0.268013), (8, 16, 0.142334),
    (8, 17, 0.731623), (9, 13, 0.808777), (9, 14, 0.205945), (9, 16, 0.554085),
    (9, 17, 0.304275), (10, 11, 0.974365), (10, 13, 0.393311), (10, 16, 0.274597),
    (11, 12, 0.586437), (11, 13, 0.928648), (11, 17, 0.512909), (12, 13, 0.795810),
    (12, 14, 0.581403), (12, 16, 0.041086), (12, 17, 0.759730), (13, 14, 0.336961),
    (13, 15, 0.198718), (13, 17, 0.191082), (14, 15, 0.186035), (14, 17, 0.761156),
];

// kmeans: 12 points x 10 dims
pub(crate) const KMEANS_N12_POINTS: [[f64; 10]; 12] = [
    [9.11002, 0.06106, 4.82484, 6.19904, 1.73007, 9.69564, 3.27416, 9.04641, 8.89987, 3.90831],
    [0.67598, 2.91592, 3.81196, 3.54562, 4.70264, 0.45163, 6.26537, 2.48306, 7.78254, 8.7113],
    [8.94023, 7.7304, 0.4708, 4.68225, 9.95584, 9.96049, 5.93501, 7.75738, 8.67906, 1.48174],
    [4.25387, 5.45516, 7.78103, 6.79578, 5.39876, 9.90842, 0.81172, 9.65141, 1.23032, 7.56302],
    [2.55319, 5.53473, 8.11386, 5.8478, 3.16515, 5.31585, 8.12552, 3.41561, 1.60965, 5.27394],
    [3.24497, 2.64679, 2.25402, 9.37613, 3.91658, 4.33125, 2.92193, 2.21017, 1.68782, 6.17135],
    [5.31082, 5.54856, 1.87199, 9.74049, 1.62758, 9.21121, 0.60003, 6.19258, 0.56318, 4.5146],
    [6.63098, 5.86293, 6.14683, 6.41343, 9.15442, 5.80235, 9.20749, 2.70775, 3.74269, 2.54521],
    [7.10254, 4.16486, 0.13647, 3.91372, 8.46266, 6.47524, 1.74747, 8.57903, 0.35589, 9.84442],
    [4.4171, 8.58625, 2.09502, 9.78096, 4.32488, 2.70198, 4.54662, 6.53021, 2.63868, 7.14099],
    [6.86481, 2.01457, 9.41148, 3.74956, 0.87813, 0.85384, 0.43303, 0.94263, 6.65593, 2.07344],
    [3.8494, 8.9065, 8.47315, 8.64937, 8.17979, 7.40941, 3.91822, 0.52376, 8.66642, 2.44087],
];

pub(crate) const QAP_N9_DISTANCES: [[f64; 9]; 9] = [
    [0.0, 24.6975, 14.4967, 29.5593, 4.9043, 21.5563, 9.4326, 4.6191, 14.7543],
    [24.6975, 0.0, 24.4557, 7.9174, 25.9272, 9.2966, 16.1992, 20.3657, 22.6338],
    [14.4967, 24.4557, 0.0, 31.8189, 19.3559, 16.5448, 11.3483, 12.3271, 27.1493],
    [29.5593, 7.9174, 31.8189, 0.0, 29.6063, 17.2137, 22.3389, 25.7415, 23.3119],
    [4.9043, 25.9272, 19.3559, 29.6063, 0.0, 24.4421, 12.5951, 8.1405, 11.0807],
    [21.5563, 9.2966, 16.5448, 17.2137, 24.4421, 0.0, 12.1287, 16.9481, 25.3065],
    [9.4326, 16.1992, 11.3483, 22.3389, 12.5951, 12.1287, 0.0, 4.8195, 16.7791],
    [4.6191, 20.3657, 12.3271, 25.7415, 8.1405, 16.9481, 4.8195, 0.0, 14.8919],
    [14.7543, 22.6338, 27.1493, 23.3119, 11.0807, 25.3065, 16.7791, 14.8919, 0.0],
];

pub(crate) const QAP_N9_FLOWS: [[f64; 9]; 9] = [
    [0.0, 12.8188, 8.0291, 18.0712, 10.7207, 15.806, 13.1888, 6.9539, 16.4688],
    [11.7805, 0.0, 16.1912, 1.0064, 17.8705, 17.2467, 15.0627, 3.9854, 12.8095],
    [1.9235, 19.5465, 0.0, 19.1171, 14.0134, 8.8951, 13.4869, 2.943, 1.1696],
    [14.6809, 19.2269, 2.8263, 0.0, 10.8089, 10.9314, 18.6236, 15.2934, 9.2809],
    [10.0583, 7.0718, 6.5861, 14.633, 0.0, 0.3073, 19.4842, 18.7635, 14.8562],
    [16.6853, 7.4937, 17.3569, 18.0753, 1.2478, 0.0, 12.4494, 18.8339, 16.228],
    [16.5752, 18.0927, 5.1124, 12.1212, 18.4499, 13.668, 0.0, 16.0441, 18.8221],
    [19.4013, 6.7816, 14.9683, 14.6019, 12.832, 17.1668, 10.4133, 0.0, 3.0366],
    [12.1731, 4.1699, 15.3266, 13.4975, 18.031, 6.4509, 11.7254, 15.0682, 0.0],
];

// mis: 32 edges
pub(crate) const MIS_N18_EDGES: [(usize, usize); 32] = [
    (0, 5), (0, 6), (0, 9), (0, 12), (0, 13), (0, 16), (1, 16), (2, 3),
    (2, 6), (2, 8), (2, 17), (3, 13), (3, 15), (4, 15), (4, 16), (5, 7),
    (5, 10), (5, 13), (5, 15), (6, 8), (6, 14), (6, 17), (7, 11), (7, 14),
    (10, 16), (11, 13), (12, 16), (13, 14), (8, 10), (8, 11), (8, 12), (9, 16),
];

pub(crate) const CFLP_N12_DEMANDS: [u64; 12] = [232, 520, 465, 765, 229, 277, 540, 324, 395, 428, 351, 381];
pub(crate) const CFLP_N12_CAPACITIES: [u64; 3] = [2290, 2290, 2290];
pub(crate) const CFLP_N12_TRANSPORT: [[f64; 3]; 12] = [
    [5.543245, 5.136929, 2.058055],
    [6.554159, 4.043134, 2.592268],
    [4.080965, 5.984916, 2.230841],
    [4.902397, 2.951256, 1.101055],
    [2.764263, 3.540181, 2.813068],
    [2.811617, 3.723713, 1.43882],
    [5.324539, 0.92178, 2.967657],
    [0.960419, 5.269752, 3.258399],
    [1.174163, 5.126471, 3.39705],
    [7.160522, 6.516486, 3.817291],
    [1.877464, 4.615311, 2.133359],
    [6.705062, 1.438378, 4.953987],
];
pub(crate) const CFLP_N12_OPENING: [f64; 3] = [1070.12661, 1746.937054, 1014.019952];
