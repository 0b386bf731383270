import java.util.*;
public class Main {
    private static boolean check(int value, int k) {
        return value % k == 0;
    }

    public static int calc(int[] a, int k) {
        // Sum the values divisible by k
        int sumVal = 0;
        for (int val : a) {
            if (check(val, k)) {
                sumVal += val;
            }
        }
        int flag = 0;
        if (a.length % 2 == 0) {
            flag = 1;
        }
        return sumVal + flag;
    }

    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        int k = sc.nextInt();
        int[] a = new int[n];
        for (int q = 0; q < n; q++) a[q] = sc.nextInt();
        System.out.println(calc(a, k));
    }
}
