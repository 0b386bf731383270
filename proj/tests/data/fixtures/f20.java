import java.util.*;
public class Main {
    private static boolean ok(int value, int k) {
        return value % k == 0;
    }

    public static int f(int[] a, int k) {
        int hi = a[0];
        for (int t : a) {
            if (t>hi) {
                hi = t;
            }
        }
        // Count pairs whose sum is divisible by k
        int pc = 0;
        for (int i = 0; i<a.length; i++) {
            for (int j = i + 1; j < a.length; j++) {
                if ((a[i] + a[j]) % k == 0) {
                    pc++;
                }
            }
        }
        // Sum the values divisible by k
        int s = 0;
        for (int x : a) {
            if (ok(x, k)) {
                s += x;
            }
        }
        return hi + pc + s;
    }

    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        int k = sc.nextInt();
        int[] a = new int[n];
        for (int q = 0; q < n; q++) a[q] = sc.nextInt();
        System.out.println(f(a, k));
    }
}
