"""Empirical bias anchors for the dense raw estimator.

Generated by tools/gen_bias_tables.py; do not edit by hand.
BIAS_TABLES[p] = (sorted mean-raw-estimate anchors, bias at each anchor).
"""

BIAS_TABLES = {
    4: (
        (22.62, 23.99, 24.68, 26.20, 27.29, 28.55, 29.51, 31.47, 32.30, 34.20, 35.11, 36.95, 37.89, 39.53, 40.59, 42.43, 43.90, 45.67, 46.26, 48.11, 49.39, 51.49, 52.19, 53.91, 54.70, 57.11, 57.95, 60.42, 61.01, 63.15, 64.05, 66.26, 68.12, 69.08, 69.43, 71.83, 73.60, 74.75, 76.16, 77.36, 79.64, 80.61, 81.65, 82.80, 85.24, 87.32, 88.90, 89.78),
        (3.62, 2.99, 2.68, 2.20, 2.29, 1.55, 1.51, 1.47, 1.30, 1.20, 1.11, 0.95, 0.89, 0.53, 0.59, 0.43, 0.90, 0.67, 0.26, 0.11, 0.39, 0.49, 0.19, -0.09, -0.30, 0.11, -0.05, 0.42, 0.01, 0.15, 0.05, 0.26, 1.12, 0.08, -0.57, -0.17, 0.60, -0.25, 0.16, -0.64, 0.64, -0.39, -0.35, -1.20, 0.24, 0.32, 0.90, -0.22),
    ),
    5: (
        (45.73, 47.97, 50.25, 52.22, 55.01, 57.28, 60.01, 62.92, 65.18, 67.49, 70.57, 73.36, 75.91, 78.81, 81.15, 84.48, 86.79, 90.27, 92.83, 95.80, 98.32, 101.83, 104.47, 107.62, 110.35, 112.55, 116.45, 119.53, 122.29, 124.73, 127.57, 131.43, 134.06, 136.99, 139.88, 143.35, 145.80, 149.71, 152.35, 152.87, 157.31, 160.27, 163.41, 167.73, 169.35, 173.83, 175.74, 178.31),
        (7.73, 6.97, 6.25, 5.22, 5.01, 4.28, 4.01, 3.92, 3.18, 2.49, 2.57, 2.36, 1.91, 1.81, 1.15, 1.48, 0.79, 1.27, 0.83, 0.80, 0.32, 0.83, 0.47, 0.62, 0.35, -0.45, 0.45, 0.53, 0.29, -0.27, -0.43, 0.43, 0.06, -0.01, -0.12, 0.35, -0.20, 0.71, 0.35, -2.13, -0.69, -0.73, -0.59, 0.73, -0.65, 0.83, -0.26, -0.69),
    ),
    6: (
        (92.33, 97.01, 102.08, 106.53, 111.20, 116.46, 121.87, 127.04, 131.34, 137.68, 141.59, 148.40, 152.94, 159.17, 164.87, 169.92, 175.97, 181.25, 187.44, 193.75, 198.30, 205.25, 209.95, 215.80, 221.66, 227.04, 234.05, 239.63, 246.88, 251.06, 257.10, 264.66, 268.70, 273.50, 280.54, 287.43, 291.21, 298.67, 303.80, 310.65, 317.45, 322.29, 328.38, 332.83, 340.76, 346.29, 352.20, 358.34),
        (15.33, 14.01, 13.08, 11.53, 10.20, 9.46, 8.87, 8.04, 6.34, 6.68, 4.59, 5.40, 3.94, 4.17, 3.87, 2.92, 2.97, 2.25, 2.44, 2.75, 1.30, 2.25, 0.95, 0.80, 0.66, 0.04, 1.05, 0.63, 1.88, 0.06, 0.10, 1.66, -0.30, -1.50, -0.46, 0.43, -0.79, 0.67, -0.20, 0.65, 1.45, 0.29, 0.38, -1.17, 0.76, 0.29, 0.20, 0.34),
    ),
    7: (
        (186.30, 195.26, 205.36, 214.26, 223.47, 234.28, 243.42, 253.87, 263.79, 273.41, 285.30, 295.09, 307.40, 316.17, 328.75, 339.19, 350.57, 362.54, 373.20, 385.57, 397.11, 408.09, 419.38, 431.83, 444.41, 455.70, 466.59, 477.88, 488.37, 501.75, 513.89, 527.15, 537.91, 550.92, 562.87, 572.86, 584.39, 595.67, 608.90, 620.80, 633.35, 646.70, 659.49, 670.34, 680.79, 692.58, 703.74, 718.17),
        (32.30, 29.26, 27.36, 24.26, 21.47, 20.28, 18.42, 16.87, 14.79, 12.41, 12.30, 10.09, 10.40, 7.17, 7.75, 6.19, 5.57, 5.54, 4.20, 4.57, 4.11, 3.09, 2.38, 2.83, 3.41, 2.70, 1.59, 0.88, -0.63, 0.75, 0.89, 2.15, 0.91, 1.92, 1.87, -0.14, -0.61, -1.33, -0.10, -0.20, 0.35, 1.70, 2.49, 1.34, -0.21, -0.42, -1.26, 1.17),
    ),
    8: (
        (372.97, 391.82, 409.60, 428.82, 447.97, 467.87, 487.10, 507.39, 528.87, 549.04, 570.20, 593.94, 612.78, 637.80, 658.39, 679.49, 702.26, 725.62, 746.91, 770.29, 794.51, 816.80, 840.05, 865.35, 884.15, 908.20, 933.99, 958.04, 979.64, 1002.93, 1026.12, 1051.65, 1074.35, 1097.72, 1122.39, 1146.06, 1171.59, 1194.21, 1213.58, 1241.82, 1264.46, 1291.44, 1311.75, 1338.63, 1362.04, 1388.50, 1411.14, 1436.53),
        (65.97, 60.82, 54.60, 49.82, 44.97, 40.87, 36.10, 32.39, 29.87, 26.04, 23.20, 22.94, 17.78, 18.80, 15.39, 12.49, 11.26, 10.62, 7.91, 7.29, 7.51, 6.80, 6.05, 7.35, 2.15, 2.20, 3.99, 4.04, 1.64, 0.93, 0.12, 1.65, 0.35, -0.28, 0.39, 0.06, 1.59, 0.21, -4.42, -0.18, -1.54, 1.44, -2.25, 0.63, 0.04, 2.50, 1.14, 2.53),
    ),
    9: (
        (746.14, 783.09, 819.44, 857.62, 897.19, 936.60, 976.42, 1015.20, 1056.74, 1098.70, 1141.17, 1182.08, 1227.06, 1273.84, 1314.69, 1359.70, 1405.64, 1453.30, 1493.28, 1541.55, 1588.83, 1634.65, 1681.53, 1724.98, 1774.10, 1822.73, 1867.37, 1914.37, 1960.64, 2008.43, 2055.22, 2104.86, 2152.06, 2201.90, 2247.58, 2295.86, 2343.16, 2391.13, 2440.33, 2485.65, 2531.24, 2579.80, 2625.82, 2681.41, 2720.95, 2774.80, 2820.24, 2869.71),
        (132.14, 121.09, 109.44, 99.62, 91.19, 82.60, 74.42, 65.20, 58.74, 52.70, 47.17, 40.08, 37.06, 35.84, 29.69, 26.70, 24.64, 24.30, 16.28, 16.55, 15.83, 13.65, 12.53, 7.98, 9.10, 9.73, 6.37, 5.37, 4.64, 4.43, 3.22, 4.86, 4.06, 5.90, 3.58, 3.86, 3.16, 3.13, 4.33, 1.65, -0.76, -0.20, -2.18, 6.41, -2.05, 3.80, 1.24, 2.71),
    ),
    10: (
        (1495.87, 1568.09, 1641.29, 1717.73, 1792.07, 1872.60, 1952.57, 2035.28, 2116.54, 2197.57, 2282.52, 2370.17, 2453.88, 2545.45, 2632.65, 2718.02, 2813.41, 2897.31, 2994.61, 3084.30, 3173.11, 3265.81, 3361.68, 3450.48, 3538.30, 3639.10, 3730.76, 3830.07, 3921.35, 4015.00, 4111.69, 4207.86, 4303.07, 4394.74, 4487.54, 4588.35, 4683.48, 4776.34, 4876.62, 4964.46, 5062.51, 5162.17, 5247.00, 5346.60, 5445.31, 5541.25, 5643.16, 5730.73),
        (266.87, 243.09, 220.29, 201.73, 180.07, 164.60, 148.57, 135.28, 120.54, 105.57, 95.52, 87.17, 74.88, 70.45, 61.65, 51.02, 50.41, 39.31, 40.61, 34.30, 27.11, 23.81, 23.68, 16.48, 8.30, 14.10, 9.76, 13.07, 8.35, 6.00, 6.69, 6.86, 7.07, 2.74, -0.46, 4.35, 3.48, 0.34, 4.62, -2.54, -0.49, 3.17, -8.00, -4.40, -1.69, -1.75, 4.16, -3.27),
    ),
    11: (
        (2991.29, 3135.30, 3286.23, 3435.91, 3589.22, 3745.69, 3905.22, 4066.77, 4229.61, 4399.08, 4568.13, 4739.04, 4910.94, 5087.40, 5260.22, 5439.91, 5623.47, 5804.22, 5981.32, 6170.10, 6346.19, 6538.52, 6723.72, 6906.40, 7095.90, 7272.51, 7470.05, 7663.97, 7846.87, 8032.74, 8221.19, 8410.83, 8610.09, 8793.12, 8982.76, 9173.02, 9366.26, 9558.20, 9745.18, 9940.51, 10125.28, 10319.09, 10509.08, 10707.30, 10896.40, 11078.14, 11274.10, 11464.15),
        (533.29, 486.30, 445.23, 402.91, 364.22, 329.69, 297.22, 266.77, 238.61, 216.08, 193.13, 172.04, 152.94, 137.40, 118.22, 105.91, 98.47, 87.22, 72.32, 70.10, 54.19, 54.52, 47.72, 39.40, 36.90, 21.51, 27.05, 29.97, 20.87, 14.74, 12.19, 9.83, 17.09, 8.12, 6.76, 5.02, 6.26, 6.20, 2.18, 5.51, -1.72, 1.09, -0.92, 5.30, 2.40, -6.86, -2.90, -4.85),
    ),
    12: (
        (5982.03, 6273.29, 6565.72, 6865.16, 7175.60, 7492.27, 7809.41, 8135.85, 8464.65, 8805.76, 9138.17, 9483.36, 9821.15, 10171.56, 10519.25, 10878.26, 11243.46, 11613.05, 11972.74, 12333.78, 12707.05, 13059.64, 13439.74, 13821.86, 14192.77, 14557.27, 14930.49, 15299.34, 15690.57, 16078.77, 16444.05, 16835.00, 17206.68, 17587.85, 17968.50, 18337.98, 18735.69, 19104.43, 19482.89, 19889.62, 20250.50, 20627.33, 21027.41, 21412.69, 21793.60, 22166.13, 22548.52, 22932.84),
        (1067.03, 974.29, 883.72, 799.16, 726.60, 660.27, 593.41, 536.85, 481.65, 439.76, 388.17, 350.36, 304.15, 271.56, 235.25, 211.26, 193.46, 179.05, 155.74, 132.78, 123.05, 91.64, 88.74, 86.86, 74.77, 55.27, 45.49, 31.34, 38.57, 43.77, 25.05, 33.00, 20.68, 18.85, 15.50, 1.98, 15.69, 1.43, -4.11, 19.62, -2.50, -9.67, 7.41, 8.69, 6.60, -4.87, -5.48, -5.16),
    ),
    13: (
        (11966.06, 12543.35, 13138.64, 13744.68, 14357.33, 14984.43, 15620.07, 16269.09, 16925.75, 17594.72, 18277.04, 18964.89, 19652.45, 20345.99, 21051.91, 21769.99, 22488.76, 23212.78, 23940.03, 24663.97, 25393.81, 26133.30, 26871.05, 27614.90, 28366.66, 29130.75, 29861.88, 30620.61, 31380.99, 32121.57, 32891.07, 33643.16, 34417.40, 35181.98, 35955.89, 36679.83, 37487.50, 38236.74, 38973.33, 39759.69, 40531.67, 41286.54, 42058.51, 42814.42, 43589.62, 44366.60, 45091.40, 45882.42),
        (2136.06, 1946.35, 1774.64, 1613.68, 1459.33, 1319.43, 1188.07, 1070.09, 959.75, 861.72, 777.04, 698.89, 619.45, 545.99, 484.91, 435.99, 387.76, 344.78, 305.03, 261.97, 224.81, 197.30, 169.05, 145.90, 130.66, 127.75, 91.88, 83.61, 76.99, 50.57, 53.07, 38.16, 45.40, 43.98, 50.89, 7.83, 48.50, 30.74, 0.33, 19.69, 24.67, 12.54, 17.51, 6.42, 15.62, 25.60, -16.60, 7.42),
    ),
    14: (
        (23936.42, 25094.41, 26280.99, 27480.85, 28712.18, 29967.17, 31251.15, 32549.85, 33847.84, 35195.38, 36546.10, 37922.59, 39304.03, 40700.60, 42109.81, 43534.02, 44970.37, 46417.95, 47865.28, 49334.41, 50797.85, 52290.42, 53758.36, 55256.69, 56748.74, 58220.19, 59740.39, 61254.18, 62770.78, 64272.24, 65788.32, 67283.72, 68812.92, 70362.48, 71862.00, 73396.60, 74937.63, 76455.12, 77976.75, 79513.48, 81023.37, 82559.20, 84106.63, 85619.95, 87171.19, 88655.02, 90249.62, 91782.55),
        (4275.42, 3899.41, 3552.99, 3218.85, 2916.18, 2637.17, 2387.15, 2151.85, 1916.84, 1730.38, 1547.10, 1389.59, 1237.03, 1100.60, 975.81, 866.02, 768.37, 681.95, 595.28, 531.41, 460.85, 419.42, 353.36, 317.69, 275.74, 214.19, 200.39, 180.18, 162.78, 130.24, 113.32, 74.72, 69.92, 85.48, 51.00, 51.60, 59.63, 43.12, 30.75, 33.48, 9.37, 12.20, 25.63, 4.95, 22.19, -27.98, 32.62, 32.55),
    ),
    15: (
        (47873.38, 50186.19, 52551.03, 54977.12, 57417.11, 59928.33, 62479.68, 65086.59, 67708.66, 70385.03, 73098.69, 75844.66, 78623.41, 81402.06, 84229.73, 87053.71, 89950.60, 92816.23, 95733.05, 98676.40, 101596.53, 104557.95, 107506.34, 110498.45, 113504.57, 116488.49, 119486.84, 122502.76, 125545.24, 128537.95, 131576.75, 134631.10, 137628.31, 140692.86, 143756.28, 146809.29, 149863.00, 152916.93, 155962.78, 159032.29, 162011.00, 165123.93, 168200.64, 171253.28, 174323.69, 177389.39, 180391.06, 183527.19),
        (8551.38, 7797.19, 7094.03, 6452.12, 5825.11, 5268.33, 4752.68, 4291.59, 3845.66, 3455.03, 3100.69, 2778.66, 2490.41, 2201.06, 1960.73, 1717.71, 1546.60, 1344.23, 1194.05, 1069.40, 922.53, 815.95, 696.34, 621.45, 559.57, 475.49, 406.84, 354.76, 329.24, 254.95, 225.75, 212.10, 142.31, 138.86, 135.28, 120.29, 106.00, 92.93, 70.78, 72.29, -16.00, 28.93, 37.64, 23.28, 25.69, 23.39, -41.94, 26.19),
    ),
    16: (
        (95756.91, 100368.53, 105097.39, 109923.76, 114854.00, 119880.40, 125004.33, 130172.16, 135439.81, 140793.27, 146176.32, 151659.44, 157187.70, 162807.44, 168469.11, 174142.61, 179883.42, 185662.52, 191480.48, 197324.85, 203197.18, 209109.58, 215027.60, 221003.27, 226978.51, 232970.39, 238988.76, 245008.87, 251091.28, 257079.81, 263139.76, 269234.02, 275299.45, 281422.33, 287507.04, 293540.97, 299704.16, 305837.08, 311933.13, 318048.22, 324113.44, 330234.65, 336446.32, 342511.48, 348659.02, 354721.65, 360881.50, 367051.57),
        (17113.91, 15590.53, 14183.39, 12874.76, 11670.00, 10560.40, 9549.33, 8582.16, 7714.81, 6932.27, 6180.32, 5528.44, 4920.70, 4405.44, 3932.11, 3470.61, 3075.42, 2719.52, 2402.48, 2110.85, 1848.18, 1625.58, 1408.60, 1248.27, 1088.51, 945.39, 827.76, 712.87, 660.28, 513.81, 437.76, 397.02, 327.45, 314.33, 264.04, 162.97, 191.16, 188.08, 149.13, 129.22, 58.44, 44.65, 121.32, 51.48, 63.02, -9.35, 15.50, 49.57),
    ),
    17: (
        (191512.97, 200758.63, 210192.10, 219877.98, 229719.27, 239744.25, 249980.12, 260349.45, 270875.32, 281554.12, 292410.41, 303328.84, 314430.63, 325579.95, 336870.13, 348295.13, 359741.09, 371284.98, 382920.72, 394700.34, 406411.86, 418225.11, 430051.17, 442003.54, 453976.83, 465926.18, 477914.73, 490016.21, 502060.69, 514208.34, 526345.34, 538456.44, 550661.84, 562832.31, 574992.81, 587162.13, 599449.42, 611556.43, 623868.50, 636046.74, 648342.29, 660504.81, 672837.45, 685057.10, 697328.95, 709616.58, 721799.62, 734055.67),
        (34226.97, 31201.63, 28364.10, 25779.98, 23350.27, 21105.25, 19070.12, 17169.45, 15424.32, 13832.12, 12418.41, 11065.84, 9897.63, 8775.95, 7796.13, 6950.13, 6125.09, 5398.98, 4763.72, 4273.34, 3713.86, 3257.11, 2812.17, 2493.54, 2196.83, 1875.18, 1593.73, 1424.21, 1198.69, 1075.34, 941.34, 782.44, 716.84, 617.31, 506.81, 406.13, 422.42, 259.43, 300.50, 207.74, 233.29, 124.81, 187.45, 136.10, 137.95, 154.58, 66.62, 52.67),
    ),
    18: (
        (383015.75, 401485.15, 420393.82, 439710.05, 459432.51, 479505.62, 499903.57, 520674.66, 541750.74, 563130.42, 584834.24, 606686.78, 628826.01, 651212.72, 673780.50, 696583.22, 719509.91, 742641.74, 765857.06, 789241.11, 812749.24, 836414.55, 860206.69, 883975.91, 907966.59, 931892.31, 955970.05, 980099.48, 1004244.32, 1028391.63, 1052623.74, 1076951.24, 1101270.90, 1125513.28, 1149997.60, 1174424.12, 1198792.82, 1223315.77, 1247607.99, 1272102.02, 1296594.78, 1321115.71, 1345589.87, 1370017.31, 1394446.31, 1419063.30, 1443563.84, 1468122.15),
        (68442.75, 62371.15, 56738.82, 51514.05, 46695.51, 42226.62, 38083.57, 34313.66, 30848.74, 27687.42, 24850.24, 22161.78, 19760.01, 17604.72, 15631.50, 13893.22, 12278.91, 10869.74, 9544.06, 8387.11, 7353.24, 6477.55, 5728.69, 4956.91, 4406.59, 3791.31, 3328.05, 2915.48, 2519.32, 2125.63, 1816.74, 1603.24, 1381.90, 1083.28, 1025.60, 911.12, 738.82, 720.77, 471.99, 425.02, 376.78, 355.71, 288.87, 175.31, 63.31, 139.30, 98.84, 116.15),
    ),
}
