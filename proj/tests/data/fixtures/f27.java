import java.util.*;

public class Solution {
    public static int processNumbers(int[] values, int k) {
        int isEvenLength = values.length % 2 == 0 ? 1 : 0;

        int bestValue = values[0];
        for (int item : values) {
            if (item > bestValue) {
                bestValue = item;
            }
        }

        int remaining = values.length;
        int steps = 0;
        while (remaining > 0) {
            remaining /= 2;
            steps += 1;
        }
        return isEvenLength + bestValue + steps;
    }

    public static void main(String[] args) {
        int[] values = {3, 6, 9, 12, 15};
        System.out.println(processNumbers(values, 3));
    }
}
