// Generated by an mpmath (60-digit) implementation of the Welch test.
pub const CASES: &[(&[f64], &[f64], f64, f64, f64)] = &[
    (
        &[-0.045207, 1.627619, -1.482124, -0.138379, 4.166872, -1.579144, 0.622485, -3.537877, -1.441821],
        &[0.708217, 2.524353, -3.916454, 5.008653, 5.118056, 2.885708, -3.469732, -7.455649, -3.179827, -2.701584, -3.534888, 10.49783, 2.537308, -2.993446, -1.739663, 5.288295, 1.175799, -1.016832, 1.485451, -1.070207, 1.6054, 0.993059, -3.378987, 2.484146, -2.103319, 1.065679, -1.175258, -1.352844, 1.726951, -1.420196, -0.557389],
        -0.33950917553610586,
        21.146815937641123,
        0.73757489577675228,
    ),
    (
        &[-3.5316, 3.814248, 0.567717, -2.11128, -3.526681, -5.511429, -3.835219, -5.324157, -3.407154, 0.689979, 1.052133, -5.952265, -0.761353, -0.30599, -3.228547],
        &[-2.778638, -0.381654, -1.612329, -0.090454, -1.074862, -0.647432, -0.020847, -0.882604, 0.450628, -1.677805, -0.134123, -0.082182, -2.192422, -1.5643, -1.562476, -1.567964],
        -1.4431484559486576,
        16.699458487450829,
        0.16747511277801226,
    ),
    (
        &[5.323534, 6.114407, 5.686002, 3.442751, 2.077282, 4.081556, 4.137646, 1.539535, 3.476826, -1.119055, 1.810048, 4.249424, 6.174161, 2.079718],
        &[-0.504216, -3.633882, -0.352766, -0.098596, -3.909184],
        5.1378618259193908,
        7.6724230527762362,
        0.0010108982556034771,
    ),
    (
        &[-0.557806, -0.671116, 1.245246],
        &[-2.16229, -2.006463, 0.168962, 1.222331, -0.346386, -0.239987, -1.637192, 3.909167, 0.267469, -2.424804, -0.278087, -1.431637, -0.505848, 5.114447, -0.655035, 0.768156, -0.211997, 1.427094, -1.732307, -3.049322, 4.995898, 3.264908, 1.118023, 4.18334, 2.993459, 2.153436, 1.932232, -0.790231, 6.021312, -1.362979, 0.138603, 1.427927, 5.709533, 3.01599, 4.533438, 4.24555, -0.012125, 0.551932],
        -1.425980395431748,
        4.0047503815890406,
        0.22693853053449334,
    ),
    (
        &[-1.948317, -2.410611, -3.649983, -3.749492, -4.321346, -2.948563, -4.83116, -3.936662, -2.383901, -2.213202, -3.937419, -4.218161, -3.728133, -4.351709, -4.64593, -3.746613, -3.876674, -3.927792, -1.775844, -2.52085, -2.898118, -2.713782, -1.868876, -3.589305, -3.808033, -2.559909, -3.732147, -2.634436, -1.478871, -3.224357, -3.071316, -4.508345, -2.737787, -3.99215, -3.793297, -3.053786, -2.206753],
        &[3.240482, 1.552246, 3.737688, -0.182725, 3.780767, 6.034093, 4.88177, 2.620005, 0.874344, 1.451094, 2.35463, 8.10212, 1.702818, 4.059346, 7.097446, 2.500764, 2.593022, 3.062432, 8.781105, -1.172965, 4.602783, 1.294734, -1.779462, 1.79622, 4.632382, 4.995412, 2.124091, 2.534778, 0.213459],
        -12.897881852815168,
        33.508448279862214,
        1.5111299951647285e-14,
    ),
    (
        &[-1.607793, -1.229857, 0.119704, -5.085491, -2.072388, -2.391078, -1.595521, -2.185548, -2.655812],
        &[2.948602, 5.632983, 2.026819, -0.471032, -2.183778, 0.658768, -0.168215, 3.06698, -4.384834, 7.182645, 1.680506, -3.252133, -4.385326, -3.038814, -2.036228, 1.707112, 0.260575, -2.530486, -0.852111, 1.896332, 0.137919, -0.609916, 2.126686, -4.46702, 5.225491, 1.125802, 2.152491, -2.962802, -2.95078, 0.9245, 2.221425, -3.619391, 1.645419, 3.392636, 0.720023, -2.615204, -0.45025, -2.065652, -2.373428],
        -3.226722243339214,
        26.279982855075089,
        0.0033429472639463226,
    ),
    (
        &[-1.235176, -0.862992, -11.44983, -5.595352, 1.446975, 5.744548, 4.417937, -5.412737, -8.921034, 5.567821, -6.19085, 0.068277, -2.361911, -2.185297, 1.534018, -2.45571, -2.41246],
        &[-1.856985, -3.726992, -1.92665, -3.561935, -1.555018, -7.266702, -2.957366, -4.301524, -2.027944, -4.579338, -3.581644, -1.488349, -1.398362, -1.783731, -2.926026, -5.386018, -3.895196, -2.676937, -2.948087, -0.708062, -1.071038, -0.193167, -3.063516, -1.792475, 0.557083, -1.624988, -6.360047, -2.938762, -6.54782, -3.545381, -4.173281, -2.841287, -2.03781, -1.968287, -4.166196, -0.759361],
        0.90095043820016454,
        18.060904137561852,
        0.37947203106220819,
    ),
    (
        &[3.874098, 1.569827, 4.223258, 7.342277, 1.872431, 5.081002, 2.339493, 0.40951, 3.065602, 0.707902, 4.429434, 6.846555, -0.439633, 4.439389, 0.302259, 0.665574, 6.713826, 4.994918, -0.139646],
        &[-0.494772, -1.322908, -0.416367, -0.617827, -1.602537, -0.694564, -0.57649, -1.526899, -0.630916, -0.833381, -0.916001, -0.795644, -0.951577, -0.596879, -0.24695, -0.921438, -0.933934, -0.781724, -0.549538, -0.591254, -0.668319, -0.595666, -0.672662, -1.37007, -1.075116, -0.912366, -0.617682, -1.085315, -0.566589, -1.452694, -1.21744, -0.612881, -0.64899, -1.0444, -0.732257, -0.464149, -0.24772, -1.16638],
        6.7578014502657168,
        18.332558588886861,
        2.251900951413087e-6,
    ),
    (
        &[-3.559319, 0.301464, -0.942321, 1.658815, 0.017358, -1.042963, 2.331777, -2.483259, 1.557198, -0.389795, 0.756715, -0.287272, -0.224018, 1.890308, 1.168694, 1.463284, 0.87392, 2.102631, -1.510529, -0.090621, 0.973289, -2.896964, 1.230384],
        &[0.678558, 0.958305, 3.522641, 1.688697, 4.842244, 2.965497, 9.032029, 3.100979, 0.775619, 5.362519, 1.106765, 0.442021, 5.243489, 2.487026, -3.377668, -1.323369, 2.523728, 3.743678, 4.689713, 3.331765, 3.683674, 1.114039, 2.705109, 1.944882, 1.916201, 2.837761, 3.952816, 6.853209, 3.862708, 3.981908, 2.455408, 3.301806],
        -5.1145541379556746,
        52.987228927880062,
        4.4333163520702503e-6,
    ),
    (
        &[-4.466284, -4.959345, -5.122514, -6.606718, -6.389894, -5.956939, -5.083629, -4.431344, -5.077561, -5.96187, -3.426602, -4.638359, -4.780915, -5.283694, -5.308654, -7.913229, -3.20794, -6.097125, -4.679806, -4.915877, -5.414628, -5.6397],
        &[2.103404, -2.525143, -0.999227, -0.60175, 0.942356, -4.101362, -2.582053, -1.773702, 1.25299, -2.809206, 0.331182, -1.102149, -3.314394, -0.777768, 0.12193, -0.499752, -2.022764],
        -8.8947037301207395,
        24.718300569918355,
        3.5596621342687455e-9,
    ),
    (
        &[3.028174, 3.135547, 2.076895, 4.030285, 3.615184, 1.972055, 2.070031, 2.474874, 2.730308, 2.689961, 3.088933, 3.918499, 3.611728, 3.399798, 2.886175],
        &[3.000019, 3.10325, 2.930903],
        -0.16640003477870307,
        15.706828829126304,
        0.86996534246815327,
    ),
    (
        &[3.107079, -2.321171, -7.63925, -1.024833, -4.563856, 7.729311, -3.243328, 3.693631, -4.903118, 1.876127, -1.152188, -4.435261, -5.705424, 0.431964, 0.546503, -9.581121, -6.103591, -4.32043, 1.73829, -0.504641, -5.335519, 0.427387, 0.830317, -5.587929, 1.35458, -7.365412],
        &[-6.11032, 3.674234, -1.45334, 5.225447, 0.965106, -5.147534, -1.813602, -0.714615, 3.441362, -1.900981, -0.668606, -7.427924, -2.741574, -6.005335, -1.438412, 1.687977, 2.833933, 2.753867, 5.342652, -4.202834, 0.250069, -4.815915, -4.523585, 3.310125, -4.656277, 1.850107, 4.817853],
        -1.2367285351865932,
        50.423316380944562,
        0.22191727778401574,
    ),
    (
        &[3.29666, 1.723421, 2.840481, 4.557795, 1.125915, 3.908449, 0.987386, 3.752619, 1.057402, 1.23004, 2.055408, 2.136593, 2.222915, 2.908819, 3.429963, 1.01208, 1.782943, 2.121976, 5.04257, 3.752881, 2.119923, 2.213543, 5.136477, 4.935402, 2.603104, 2.73571, 0.867941],
        &[4.028665, 4.797172, 4.387291, 4.257305, 4.151479, 4.274528, 3.471671, 3.758107, 4.28219, 4.249679, 4.343674, 3.96336],
        -5.6087291741024814,
        32.525760115509594,
        3.2044712828397382e-6,
    ),
    (
        &[0.078734, 1.747684, 1.18693, 2.306292, 0.376605, 4.681756, 0.240627, 1.914006, -3.470653, 3.411082, 3.49154, -0.295312, 4.047058, 3.392653, 3.591376, 5.507827, 2.163578, -2.119352, 3.640678, 1.423087, -1.594257, 5.280885, -0.883171, 1.186059, 1.521015, 2.610777, 2.933914, 2.085305],
        &[-5.112947, 1.397476, -1.731675, -0.858486, -0.576878, -3.295471, -0.095926, -3.92184, 2.696903, -1.455174, -1.840043, -0.518082, 3.222135, -3.58774, -2.264142, -1.930355, -2.726534, -4.094397],
        4.8366572386843429,
        35.495851706231536,
        2.5474596910215968e-5,
    ),
    (
        &[3.651236, 4.875418, 1.637572, 2.74728, 2.318407, 2.417158, 3.202659, 1.551354, 0.411085, 3.85495, 3.215839, 3.911292, 3.134355, 2.006043, 1.621307, 2.749517, 1.05231, 2.868201, 3.546558, 4.945583, 3.099108, 1.609909, 1.816693, 3.751189, 1.824928, 0.91174, 4.616981],
        &[-0.500084, -0.143686, -2.850596, -2.40429, 0.721749, 2.058854, -2.905299, 2.252557, -3.153061],
        4.6210589478648761,
        9.7411732707548201,
        0.0010168297708379476,
    ),
    (
        &[3.345702, 1.729602, 2.273566, 1.486526, 3.34869, 2.976974, 2.06642, 3.869701, 1.636217, 2.081816, 1.064758, 2.461851, 2.191111, 0.705742, 2.151365, 1.576448, -0.605839],
        &[7.527954, 1.502341, 2.132088, 3.793809, 3.051576, 3.335782, 5.60726, 3.771288, 2.299533, 2.727061, 1.933796, 0.032663, 0.014511, 0.885455, 6.596937, 3.391761, 6.79964, -1.767459, 2.50556, 2.641782, -1.883562, 1.824787, 8.446362, 1.806165, -1.972076, 5.180582, -0.883408, 3.598344, 2.544853, 1.871169, 1.274263, 0.113339, 2.271789, -3.465406, -2.641591],
        -0.32169484357549228,
        48.156525985370772,
        0.74907612329000239,
    ),
    (
        &[-3.153541, -4.62319, 1.418359, -4.94531, -3.406471, -5.044957, -6.477687, -4.249673, -4.795036, -7.598583, -5.434056],
        &[4.150882, 3.030566, 1.735847, 3.339699, 3.353884, 4.780193, 3.9667, 3.722408, 3.672927, 2.762669, 4.174647],
        -10.737072655054697,
        12.50326721686786,
        1.1300582633050812e-7,
    ),
    (
        &[5.298837, 2.467401, 0.729575, 3.839251, 5.146462, 5.050025, 5.3633, 1.721303, 4.123658, 7.152647, 4.905953, 4.173404, 4.349444, 3.945813, 4.648162, 5.374962, 7.683826, 5.196052, 5.789839, 7.343578, 2.692197, 5.065342, 2.830007, 2.356391, 5.174952, 3.286767, 2.376092, 5.349148, 5.343498, 5.005072, 6.437363, 7.65775, 4.988777, 2.51854, 1.612323, 10.544281, 3.291324, 5.308746, 6.177317],
        &[-4.445415, 0.069294, -1.228003, -1.94553, -2.906307, -5.550446, -1.539501, 1.922121, -5.16538, 2.084988, -12.201998, -7.140393, -0.416915, -2.150268, -7.731402, -2.579022, -14.053739, -3.062044, -0.005488, -4.598092, -9.913783, -11.895138, 1.418811, 0.23962, -6.684429, -5.918257, -3.030709, -1.456073, -2.611274, -4.996987, -3.541197, -3.748169, 3.147378, -6.313169, -1.867596, -9.838554, -1.470285],
        11.432789120042584,
        50.748088508091505,
        1.1867741570096176e-15,
    ),
    (
        &[-0.795731, -0.820474, -0.60199, -0.930636, -0.573189, -0.509848, -0.412737, -0.706575, -0.699427, -0.850087, -0.482169, -0.661156, -0.477419, -0.183264, -0.618989, -0.525679, -0.645491],
        &[-2.842962, -0.529729, -3.910358, -2.501159, -2.988628, -1.410361, -2.209533, -2.407214, -3.81702, -2.978709, -2.394975, -2.6672, -1.423388, -2.409138, -4.153734, -2.416601, -2.836535, -1.28463, -3.586703, -3.898906, -2.945157, -1.465523, -3.925847, -0.932907, -5.343724, -2.795016, -0.80451, -3.02706, -1.399451, -1.554471],
        9.1936947252237961,
        31.597729447181544,
        1.9164640855936726e-10,
    ),
    (
        &[-3.860268, -2.825747, -3.106832, -5.07994, -4.744643, -2.19899, -3.360826, -3.494682, -3.855767, -3.379521],
        &[8.142236, 3.646203, 0.69911, 0.007237, 3.898495, 4.514753, 3.26732, 1.616861, -5.687498, 0.970688, -2.746033, 3.886804, 3.400585, -4.766845, 2.784361, 2.078469, -6.349323, -1.312968, -2.095069, -3.877058, 1.576827, 1.464139, 4.169645, 1.545058, -1.325748, 0.448831, -7.976825, 3.227499],
        -5.4191359287073509,
        33.237588489443451,
        5.2411011211723234e-6,
    ),
];
