"""Published small-n values used by ``galled-census check --suite tables``.

Values are copied verbatim, including the entries where the published tables
disagree with the recurrences (see ``KNOWN_MISPRINTS``).
"""

# N[n, k] for 2 <= n <= 11, columns indexed by k = 0..n-1
N_TABLE = {
    2: [1, 0],
    3: [1, 1, 3],
    4: [3, 6, 20, 87],
    5: [15, 45, 189, 993, 6249],
    6: [105, 420, 2160, 13407, 97182, 804585],
    7: [945, 4725, 28875, 207135, 1701855, 15738765, 161685045],
    8: [10395, 62370, 442260, 3603915, 33121890, 338588685, 3808469970, 46726507485],
    9: [135135, 945945, 7640325, 69757065, 709428825, 7946584695, 97162333695,
        1287228175056, 18363976595055],
    10: [2027025, 16216200, 147026880, 1487243835, 16587636030, 202099078125,
         2669506204050, 37987475258565, 579247192040580, 9420991174195965],
    11: [34459425, 310134825, 3119591475, 34639019415, 420498508815, 5537451658725,
         78595220899125, 1195779444849675, 19410597807225345, 334803875697765495,
         6114381201716874975],
}

GN_TOTALS = {
    1: 1,
    2: 6,
    3: 240,
    4: 20502,
    5: 2868990,
    6: 589130280,
    7: 167357180970,
    8: 63356654623500,
    9: 31092212800634580,
    10: 19327089427089478650,
}

# GN[7, 7 + j - c, j]: rows j = 0..5, columns c = 0..7
GN7_JOINT = [
    [46726507485, 26659289790, 7110362385, 1159266150, 125137025, 9287460, 436590, 10395],
    [18868231935, 20820564765, 12078633735, 3747731400, 692176275, 79858170, 5554395, 186795],
    [4976625150, 7604859780, 5995908765, 2779284375, 813268575, 145143495, 14794920, 686700],
    [960639750, 1795456530, 1708006230, 983507175, 366209550, 86543100, 11981970, 746235],
    [122089275, 260763300, 281838690, 186377625, 80515575, 22424850, 3717000, 281925],
    [7577955, 17681895, 20896785, 15181425, 7243425, 2242485, 416115, 35595],
]


def gn7_joint_cells():
    """Yield ((k, j), published value) for the n = 7 joint table."""
    for j, row in enumerate(GN7_JOINT):
        for c, value in enumerate(row):
            yield (7 + j - c, j), value


# (table, cell) -> value implied by the recurrences
KNOWN_MISPRINTS = {
    ("N", (9, 7)): 1287228175065,
    ("GN7", (3, 0)): 126137025,
}
