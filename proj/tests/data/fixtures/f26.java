import java.util.*;

public class Solution {
    public static int solve(int[] a, int k) {
        // Sum the values divisible by k
        int total = 0;
        for (int x : a) {
            if (x % k == 0) {
                total += x;
            }
        }

        // Count pairs whose sum is divisible by k
        int pairs = 0;
        for (int idx = 0; idx < a.length; idx++) {
            for (int j = idx + 1; j < a.length; j++) {
                if ((a[idx] + a[j]) % k == 0) {
                    pairs += 1;
                }
            }
        }

        // Flag even-length input
        int flag = a.length % 2 == 0 ? 1 : 0;
        // Count how many times the size can be halved
        int m = a.length;
        int count = 0;
        while (m > 0) {
            m /= 2;
            count += 1;
        }

        return total + pairs + flag + count;
    }

    public static void main(String[] args) {
        int[] a = {3, 6, 9, 12, 15};
        System.out.println(solve(a, 3));
    }
}
